//! JSON interchange format for posets and edge labelings, and DOT export.
//!
//! The poset schema is `{ "n": int, "covers": [[lo, hi], ..],
//! "names": {"id": str}?, "labels": {"lo-hi": [ints]}?, "order": {..}? }`
//! with 0-based ids; covers must form the transitive reduction. Chain-edge
//! labelings are code-defined and never serialized.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeling::{EdgeLabeling, Label, LabelOrder, Labeling};
use crate::poset::Poset;

#[derive(Debug, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub covers: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub names: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<LabelOrder>,
}

/// Parse a poset (and edge labeling, when present) from the JSON schema.
pub fn poset_from_json(text: &str) -> Result<(Poset, Option<EdgeLabeling>)> {
    let spec: PosetJson = serde_json::from_str(text)?;
    let mut poset = Poset::build(&spec.covers, spec.n)?;
    if let Some(names) = &spec.names {
        let mut vec: Vec<String> = (0..spec.n).map(|i| i.to_string()).collect();
        for (k, v) in names {
            let id: usize = k
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad element id '{k}'")))?;
            if id >= spec.n {
                return Err(Error::ElementOutOfRange(id, spec.n));
            }
            vec[id] = v.clone();
        }
        poset = poset.with_names(vec);
    }
    let labeling = match spec.labels {
        None => None,
        Some(raw) => {
            let mut labels = BTreeMap::new();
            for (key, parts) in raw {
                let (lo, hi) = key
                    .split_once('-')
                    .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                    .ok_or_else(|| {
                        Error::InvalidInput(format!("bad edge key '{key}', expected 'lo-hi'"))
                    })?;
                labels.insert((lo, hi), Label(parts));
            }
            let order = spec.order.unwrap_or(LabelOrder::LexTotal);
            Some(EdgeLabeling::new(&poset, labels, order)?)
        }
    };
    Ok((poset, labeling))
}

/// Serialize a poset (and optional edge labeling) into the JSON schema,
/// with sorted keys for byte-stable output.
pub fn poset_to_json(p: &Poset, labeling: Option<&EdgeLabeling>) -> PosetJson {
    PosetJson {
        n: p.n_elements(),
        covers: p.covers().to_vec(),
        names: p.names().map(|names| {
            names
                .iter()
                .enumerate()
                .map(|(i, n)| (i.to_string(), n.clone()))
                .collect()
        }),
        labels: labeling.map(|lab| {
            lab.labels()
                .iter()
                .map(|(&(lo, hi), label)| (format!("{lo}-{hi}"), label.0.clone()))
                .collect()
        }),
        order: labeling.map(|lab| lab.order().clone()),
    }
}

/// DOT rendering: one node per element, rank-aligned, one edge per cover,
/// optionally labeled.
pub fn poset_to_dot(p: &Poset, labeling: Option<&EdgeLabeling>) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
    for v in 0..p.n_elements() {
        out.push_str(&format!("  e{v} [label=\"{}\"];\n", escape(&p.name(v))));
    }
    for k in 0..=p.max_rank() {
        let ids: Vec<String> = p.rank_elements(k).iter().map(|v| format!("e{v}")).collect();
        if !ids.is_empty() {
            out.push_str(&format!("  {{ rank=same; {}; }}\n", ids.join("; ")));
        }
    }
    for &(lo, hi) in p.covers() {
        match labeling.and_then(|lab| lab.label_of(lo, hi).ok()) {
            Some(label) => out.push_str(&format!(
                "  e{lo} -> e{hi} [label=\"{}\"];\n",
                escape(&label.to_string())
            )),
            None => out.push_str(&format!("  e{lo} -> e{hi};\n")),
        }
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_labels() {
        let text = r#"{
            "n": 4,
            "covers": [[0,1],[0,2],[1,3],[2,3]],
            "names": {"0": "bottom", "3": "top"},
            "labels": {"0-1": [1], "0-2": [2], "1-3": [2], "2-3": [1]},
            "order": {"mode": "lex_total"}
        }"#;
        let (p, lab) = poset_from_json(text).unwrap();
        let lab = lab.unwrap();
        assert_eq!(p.n_elements(), 4);
        assert_eq!(p.name(0), "bottom");
        assert_eq!(p.name(1), "1");
        assert_eq!(lab.label_of(0, 1).unwrap(), &Label::single(1));
        let back = serde_json::to_string(&poset_to_json(&p, Some(&lab))).unwrap();
        let (p2, lab2) = poset_from_json(&back).unwrap();
        assert_eq!(p2.covers(), p.covers());
        assert_eq!(lab2.unwrap().labels(), lab.labels());
    }

    #[test]
    fn rejects_bad_edge_key() {
        let text = r#"{"n": 2, "covers": [[0,1]], "labels": {"zero-one": [1]}}"#;
        assert!(poset_from_json(text).is_err());
    }

    #[test]
    fn dot_is_rank_aligned() {
        let p = Poset::build(&[(0, 1)], 2).unwrap();
        let dot = poset_to_dot(&p, None);
        assert!(dot.contains("rank=same"));
        assert!(dot.contains("e0 -> e1"));
    }
}
