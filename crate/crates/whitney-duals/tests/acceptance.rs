//! Acceptance suite: every numbered criterion below reproduces a result of
//! the theory at desk scale, exactly. Each test prints one PASS line (run
//! with `--nocapture` to see them); a failing assertion marks the criterion
//! FAIL.

use std::collections::BTreeMap;
use std::time::Instant;

use whitney_duals::dual::{
    build_q, chain_bijection_check, check_whitney_duality, exchange_classes, mobius_q_check,
    verify_r_iso_q, BuildOptions, ClassStrategy, QuotientPoset,
};
use whitney_duals::families::{
    increasing_forest_poset, is_parking_function, ncdyck_poset, noncrossing_lattice,
    partition_lattice, rooted_forest_poset, rooted_forests, weighted_partition_poset,
};
use whitney_duals::hecke::{characteristic, hecke_action, transport_to_dual, verify_hecke_relations};
use whitney_duals::iso::are_isomorphic;
use whitney_duals::labeling::{descent_set, EdgeLabeling, Label, LabelOrder, Labeling};
use whitney_duals::poset::Poset;
use whitney_duals::qsym::{flag_qsym, flag_vectors_interval, omega, subset_mask, QSymFundamental};
use whitney_duals::verify::{verify_er, verify_rank_two_switching};

fn pass(criterion: usize, what: &str) {
    println!("ACCEPTANCE {criterion}: PASS — {what}");
}

fn assume() -> BuildOptions {
    BuildOptions {
        assume_verified: true,
        ..BuildOptions::default()
    }
}

/// Criterion 1: Table 1 reproduction for the partition lattice and the
/// increasing spanning forest poset on three elements.
#[test]
fn criterion_01_table1() {
    let start = Instant::now();
    let (pi3, _) = partition_lattice(3).unwrap();
    assert_eq!(pi3.whitney_first().0, vec![1, -3, 2]);
    assert_eq!(pi3.whitney_second().0, vec![1, 3, 1]);
    let (isf3, _) = increasing_forest_poset(3).unwrap();
    assert_eq!(isf3.whitney_first().0, vec![1, -3, 1]);
    assert_eq!(isf3.whitney_second().0, vec![1, 3, 2]);
    assert!(start.elapsed().as_secs() < 1, "must finish within a second");
    pass(1, "Whitney numbers of Pi_3 and ISF_3 match Table 1");
}

/// Criterion 2: the quotient dual of the partition lattice under its
/// minimum labeling is Whitney-dual to it and isomorphic to the increasing
/// spanning forest poset, for n = 3, 4, 5.
#[test]
fn criterion_02_partition_lattice_dual() {
    let start = Instant::now();
    for n in 3..=5 {
        let (p, lab) = partition_lattice(n).unwrap();
        let q = build_q(&p, &lab, &BuildOptions::default()).unwrap();
        assert!(check_whitney_duality(&p, &q), "n = {n}");
        let (isf, _) = increasing_forest_poset(n).unwrap();
        assert!(are_isomorphic(&q.poset, &isf).is_some(), "n = {n}");
    }
    assert!(start.elapsed().as_secs() < 60, "must finish within a minute");
    pass(2, "Q(Pi_n, min) is a Whitney dual isomorphic to ISF_n for n = 3, 4, 5");
}

/// Criterion 3: the sixteen maximal chains of NC_4 carry exactly the parking
/// functions of length three, and the maximal-chain count of NC_n is
/// n^(n-2) for n = 3..6, cross-checked by independent parking-function
/// enumeration.
#[test]
fn criterion_03_noncrossing_chain_words() {
    let (p, lab) = noncrossing_lattice(4).unwrap();
    let chains = p.maximal_chains();
    assert_eq!(chains.len(), 16);
    let mut words: Vec<Vec<i64>> = chains
        .iter()
        .map(|c| lab.word(&p, &c.0).unwrap().iter().map(|l| l.0[0]).collect())
        .collect();
    words.sort();
    let mut expected: Vec<Vec<i64>> = vec![
        vec![1, 1, 1],
        vec![1, 1, 2],
        vec![1, 2, 1],
        vec![2, 1, 1],
        vec![1, 1, 3],
        vec![1, 3, 1],
        vec![3, 1, 1],
        vec![1, 2, 2],
        vec![2, 1, 2],
        vec![2, 2, 1],
        vec![1, 2, 3],
        vec![1, 3, 2],
        vec![2, 1, 3],
        vec![2, 3, 1],
        vec![3, 1, 2],
        vec![3, 2, 1],
    ];
    expected.sort();
    assert_eq!(words, expected, "word multiset of NC_4");

    for n in 3..=6usize {
        let (p, lab) = noncrossing_lattice(n).unwrap();
        let chains = p.maximal_chains();
        assert_eq!(chains.len(), n.pow(n as u32 - 2), "chain count at n = {n}");
        let mut words: Vec<Vec<i64>> = Vec::new();
        for c in &chains {
            let w: Vec<i64> = lab.word(&p, &c.0).unwrap().iter().map(|l| l.0[0]).collect();
            assert!(is_parking_function(&w), "word {w:?} at n = {n}");
            words.push(w);
        }
        words.sort();
        words.dedup();
        assert_eq!(words.len(), chains.len(), "words are distinct at n = {n}");
        // Independent enumeration of all parking functions of length n - 1.
        let mut count = 0usize;
        let len = n - 1;
        let mut w = vec![1i64; len];
        loop {
            if is_parking_function(&w) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == len {
                    break;
                }
                w[k] += 1;
                if w[k] <= len as i64 {
                    break;
                }
                w[k] = 1;
                k += 1;
            }
            if k == len {
                break;
            }
        }
        assert_eq!(count, chains.len(), "parking function count at n = {n}");
    }
    pass(3, "NC_n chain words are exactly the parking functions, n = 3..6");
}

/// Criterion 4: the quotient dual of the noncrossing partition lattice is
/// the poset of noncrossing Dyck path collections, with Catalan-many top
/// elements.
#[test]
fn criterion_04_noncrossing_dual_is_ncdyck() {
    let start = Instant::now();
    let catalan = [1usize, 1, 2, 5, 14];
    for n in 3..=5usize {
        let (p, lab) = noncrossing_lattice(n).unwrap();
        let q = build_q(&p, &lab, &BuildOptions::default()).unwrap();
        let dyck = ncdyck_poset(n).unwrap();
        assert!(are_isomorphic(&q.poset, &dyck).is_some(), "n = {n}");
        let top = q.poset.rank_elements(q.poset.max_rank()).len();
        assert_eq!(top, catalan[n - 1], "top rank size at n = {n}");
    }
    assert!(start.elapsed().as_secs() < 60, "must finish within a minute");
    pass(4, "Q(NC_n, parking labeling) is NCDyck_n with Catalan top rank, n = 3, 4, 5");
}

/// Criterion 5: the chain-edge labeling of the weighted partition poset
/// produces the rooted spanning forest poset as its dual, and the two are
/// Whitney duals numerically up to n = 5.
#[test]
fn criterion_05_weighted_partitions_and_forests() {
    let sizes = [0usize, 1, 9, 16, 125, 1296];
    for n in 3..=4usize {
        let fam = weighted_partition_poset(n).unwrap();
        let lab = fam.lambda_c();
        let q = build_q(&fam.poset, &lab, &BuildOptions::default()).unwrap();
        let sf = rooted_forest_poset(n).unwrap();
        assert_eq!(q.poset.n_elements(), sizes[n], "element count at n = {n}");
        assert_eq!(sf.poset.n_elements(), sizes[n]);
        assert!(are_isomorphic(&q.poset, &sf.poset).is_some(), "n = {n}");
    }
    for n in 3..=5usize {
        let fam = weighted_partition_poset(n).unwrap();
        let sf = rooted_forest_poset(n).unwrap();
        assert!(
            Poset::is_whitney_dual_pair(&fam.poset, &sf.poset),
            "whitney vectors at n = {n}"
        );
    }
    pass(5, "Q(Pi_n^w, lambda_C) is SF_n (n = 3, 4); Pi_n^w and SF_n are Whitney duals (n = 3, 4, 5)");
}

/// Criterion 6: the edge labeling of the weighted partition poset yields a
/// second, non-isomorphic Whitney dual.
#[test]
fn criterion_06_non_unique_duals() {
    let fam = weighted_partition_poset(3).unwrap();
    let lab = fam.lambda_e().unwrap();
    let q = build_q(&fam.poset, &lab, &BuildOptions::default()).unwrap();
    assert!(check_whitney_duality(&fam.poset, &q));
    let sf = rooted_forest_poset(3).unwrap();
    assert!(are_isomorphic(&q.poset, &sf.poset).is_none());
    pass(6, "Q(Pi_3^w, lambda_E) is a Whitney dual not isomorphic to SF_3");
}

fn all_constructed_duals(max_n: usize) -> Vec<(String, Poset, Box<dyn Labeling>, QuotientPoset)> {
    let mut out: Vec<(String, Poset, Box<dyn Labeling>, QuotientPoset)> = Vec::new();
    for n in 3..=max_n.min(5) {
        let (p, lab) = partition_lattice(n).unwrap();
        let q = build_q(&p, &lab, &assume()).unwrap();
        out.push((format!("pi:{n}"), p, Box::new(lab), q));
    }
    for n in 3..=max_n.min(5) {
        let (p, lab) = noncrossing_lattice(n).unwrap();
        let q = build_q(&p, &lab, &assume()).unwrap();
        out.push((format!("nc:{n}"), p, Box::new(lab), q));
    }
    for n in 3..=max_n.min(4) {
        let fam = weighted_partition_poset(n).unwrap();
        let lab = fam.lambda_c();
        let q = build_q(&fam.poset, &lab, &assume()).unwrap();
        out.push((format!("piw:{n}:lambda_c"), fam.poset, Box::new(lab), q));
    }
    {
        let fam = weighted_partition_poset(3).unwrap();
        let lab = fam.lambda_e().unwrap();
        let q = build_q(&fam.poset, &lab, &assume()).unwrap();
        out.push(("piw:3:lambda_e".into(), fam.poset, Box::new(lab), q));
    }
    out
}

/// Criterion 7: Möbius structure. Every interval Möbius value of every
/// constructed dual lies in {0, +1, -1} and matches the increasing-chain
/// criterion; Möbius values of SF_3 and SF_4 from the bottom obey the leaf
/// criterion; the top Möbius values of Pi_n^w count rooted trees by
/// descents, for n = 3, 4.
#[test]
fn criterion_07_mobius_structure() {
    for (name, p, lab, q) in all_constructed_duals(4) {
        let check = mobius_q_check(&p, lab.as_ref(), &q).unwrap();
        assert!(check.pass, "{name}: {:?}", check.counterexample);
    }

    for n in 3..=4usize {
        let sf = rooted_forest_poset(n).unwrap();
        for (id, forest) in sf.elements.iter().enumerate() {
            let mu = sf.poset.mobius(sf.poset.min_element(), id).unwrap();
            // Every nonroot vertex is a leaf iff no nonroot has children.
            let parents = forest.parents();
            let mut children = vec![0usize; n + 1];
            for v in 1..=n {
                if let Some(p) = parents[v] {
                    children[p] += 1;
                }
            }
            let all_leaves = (1..=n)
                .filter(|v| parents[*v].is_some())
                .all(|v| children[v] == 0);
            let expected = if all_leaves {
                if sf.poset.rank(id) % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                0
            };
            assert_eq!(mu, expected, "forest {forest} at n = {n}");
        }
    }

    for n in 3..=4usize {
        let fam = weighted_partition_poset(n).unwrap();
        // Rooted trees on [n] by descent count, brute-enumerated.
        let mut by_descents: BTreeMap<usize, i64> = BTreeMap::new();
        for f in rooted_forests(n) {
            if f.roots().len() == 1 {
                *by_descents.entry(f.tree_descents(1)).or_default() += 1;
            }
        }
        let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
        for i in 0..n {
            let top = fam
                .elements
                .iter()
                .position(|e| e.n_blocks() == 1 && e.blocks()[0].1 == i)
                .unwrap();
            let mu = fam.poset.mobius(fam.poset.min_element(), top).unwrap();
            assert_eq!(
                mu,
                sign * by_descents.get(&i).copied().unwrap_or(0),
                "mu(0, [n]^{i}) at n = {n}"
            );
        }
    }
    pass(7, "Möbius values of duals, SF_n, and Pi_n^w tops all match the structural criteria");
}

/// Criterion 8: the explicit pairing (element, ascent-free word) is a
/// cover-preserving bijection onto the quotient dual.
#[test]
fn criterion_08_r_isomorphic_to_q() {
    for n in 3..=4 {
        let (p, lab) = partition_lattice(n).unwrap();
        assert!(verify_r_iso_q(&p, &lab, &BuildOptions::default()).unwrap(), "pi:{n}");
    }
    for n in 3..=4 {
        let (p, lab) = noncrossing_lattice(n).unwrap();
        assert!(verify_r_iso_q(&p, &lab, &BuildOptions::default()).unwrap(), "nc:{n}");
    }
    let fam = weighted_partition_poset(3).unwrap();
    let lab = fam.lambda_e().unwrap();
    assert!(verify_r_iso_q(&fam.poset, &lab, &BuildOptions::default()).unwrap());
    pass(8, "R = Q via the explicit map for pi (n <= 4), nc (n <= 4), piw with lambda_E (n = 3)");
}

/// Criterion 9: flag quasisymmetric expansions and the omega identity
/// between a poset and its dual.
#[test]
fn criterion_09_quasisymmetric_identities() {
    let expect = |pairs: &[(Vec<usize>, i64)], degree: usize| {
        let mut q = QSymFundamental::zero(degree);
        for (set, c) in pairs {
            q.add_term(subset_mask(set), *c);
        }
        q
    };
    let (pi3, _) = partition_lattice(3).unwrap();
    assert_eq!(
        flag_qsym(&pi3).unwrap(),
        expect(&[(vec![], 1), (vec![1], 2)], 2)
    );
    let (isf3, _) = increasing_forest_poset(3).unwrap();
    assert_eq!(
        flag_qsym(&isf3).unwrap(),
        expect(&[(vec![], 2), (vec![1], 1)], 2)
    );
    let (nc4, _) = noncrossing_lattice(4).unwrap();
    assert_eq!(
        flag_qsym(&nc4).unwrap(),
        expect(&[(vec![], 1), (vec![1], 5), (vec![2], 5), (vec![1, 2], 5)], 3)
    );
    let dyck4 = ncdyck_poset(4).unwrap();
    assert_eq!(
        flag_qsym(&dyck4).unwrap(),
        expect(&[(vec![], 5), (vec![1], 5), (vec![2], 5), (vec![1, 2], 1)], 3)
    );
    for (name, p, _lab, q) in all_constructed_duals(5) {
        assert_eq!(
            flag_qsym(&q.poset).unwrap(),
            omega(&flag_qsym(&p).unwrap()),
            "omega identity for {name}"
        );
    }
    pass(9, "fundamental-basis expansions and F_Q = omega(F_P) for every constructed dual");
}

/// Criterion 10: exhaustive 0-Hecke relations (idempotence, far
/// commutation, braid, locality) on the chains of the poset and of its
/// dual, and the characteristic identity.
#[test]
fn criterion_10_hecke_relations() {
    let mut cases: Vec<(String, Poset, Box<dyn Labeling>)> = Vec::new();
    for n in 3..=5 {
        let (p, lab) = partition_lattice(n).unwrap();
        cases.push((format!("pi:{n}"), p, Box::new(lab)));
    }
    for n in 3..=5 {
        let (p, lab) = noncrossing_lattice(n).unwrap();
        cases.push((format!("nc:{n}"), p, Box::new(lab)));
    }
    for n in 3..=4 {
        let fam = weighted_partition_poset(n).unwrap();
        let lab = fam.lambda_c();
        cases.push((format!("piw:{n}"), fam.poset, Box::new(lab)));
    }
    for (name, p, lab) in cases {
        let h = hecke_action(&p, lab.as_ref(), true).unwrap();
        let base = verify_hecke_relations(&h);
        assert!(base.all_pass(), "{name} base: {:?}", base.note);
        let q = build_q(&p, lab.as_ref(), &assume()).unwrap();
        assert!(chain_bijection_check(&p, lab.as_ref(), &q).unwrap().pass, "{name}");
        let hq = transport_to_dual(&h, &q).unwrap();
        let dual = verify_hecke_relations(&hq);
        assert!(dual.all_pass(), "{name} dual: {:?}", dual.note);
        assert_eq!(
            characteristic(&h, lab.as_ref()),
            flag_qsym(&p).unwrap(),
            "{name} characteristic"
        );
    }
    pass(10, "Hecke relations hold on P- and Q-chains and ch(chi_P) = F_P, all cases");
}

/// Criterion 11: negative controls.
#[test]
fn criterion_11_negative_controls() {
    // Rank two switching fails on the increasing-forest poset labeling.
    let (isf3, star) = increasing_forest_poset(3).unwrap();
    assert!(!verify_rank_two_switching(&isf3, &star).unwrap().pass);

    // The three-element chain has w_2 = 0 but W_2 = 1, so nothing pairs
    // with it.
    let chain3 = Poset::build(&[(0, 1), (1, 2)], 3).unwrap();
    assert_eq!(chain3.whitney_first().0, vec![1, -1, 0]);
    assert_eq!(chain3.whitney_second().0, vec![1, 1, 1]);
    let b2 = Poset::build(&[(0, 1), (0, 2), (1, 3), (2, 3)], 4).unwrap();
    let (pi3, _) = partition_lattice(3).unwrap();
    let (isf, _) = increasing_forest_poset(3).unwrap();
    let two = Poset::build(&[(0, 1)], 2).unwrap();
    for (name, candidate) in [
        ("chain3", &chain3),
        ("b2", &b2),
        ("pi3", &pi3),
        ("isf3", &isf),
        ("two-chain", &two),
    ] {
        assert!(
            !Poset::is_whitney_dual_pair(&chain3, candidate),
            "three-chain must reject {name}"
        );
    }

    // A constant labeling of Pi_3 has no increasing chain in the top interval.
    let labels: BTreeMap<(usize, usize), Label> = pi3
        .covers()
        .iter()
        .map(|&e| (e, Label::single(1)))
        .collect();
    let constant = EdgeLabeling::new(&pi3, labels, LabelOrder::LexTotal).unwrap();
    assert!(!verify_er(&pi3, &constant).unwrap().pass);
    pass(11, "switching fails on ISF_3, the 3-chain has no dual, constant labeling fails ER");
}

/// Criterion 12: oracle cross-checks. Exchange classes agree between the
/// normal-form and union-find strategies; the flag h-vector from Möbius
/// inversion agrees with descent-set tallies on every ER-labeled family.
#[test]
fn criterion_12_oracle_cross_checks() {
    // Classes by normal form equal classes by union-find.
    let mut labeled: Vec<(String, Poset, Box<dyn Labeling>)> = Vec::new();
    for n in 3..=4 {
        let (p, lab) = partition_lattice(n).unwrap();
        labeled.push((format!("pi:{n}"), p, Box::new(lab)));
        let (p, lab) = noncrossing_lattice(n).unwrap();
        labeled.push((format!("nc:{n}"), p, Box::new(lab)));
        let fam = weighted_partition_poset(n).unwrap();
        let lab_e = fam.lambda_e().unwrap();
        let lab_c = fam.lambda_c();
        labeled.push((format!("piw:{n}:lambda_e"), fam.poset.clone(), Box::new(lab_e)));
        labeled.push((format!("piw:{n}:lambda_c"), fam.poset, Box::new(lab_c)));
    }
    for (name, p, lab) in &labeled {
        // CrossCheck hard-errors on disagreement.
        exchange_classes(p, lab.as_ref(), None, ClassStrategy::CrossCheck, None)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
    }

    // Flag h-vector against descent statistics, per maximal interval.
    for n in 3..=5 {
        let mut er_cases: Vec<(String, Poset, Box<dyn Labeling>)> = Vec::new();
        let (p, lab) = partition_lattice(n).unwrap();
        er_cases.push((format!("pi:{n}"), p, Box::new(lab)));
        let (p, lab) = noncrossing_lattice(n).unwrap();
        er_cases.push((format!("nc:{n}"), p, Box::new(lab)));
        let fam = weighted_partition_poset(n).unwrap();
        let lab = fam.lambda_e().unwrap();
        er_cases.push((format!("piw:{n}:lambda_e"), fam.poset, Box::new(lab)));
        for (name, p, lab) in &er_cases {
            for m in p.maximal_elements() {
                let fv = flag_vectors_interval(p, m);
                let mut tallies = vec![0i64; fv.beta.len()];
                for c in p.saturated_chains(p.min_element(), m).unwrap() {
                    let w = lab.word(p, &c.0).unwrap();
                    let mask = subset_mask(&descent_set(&w, lab.order()));
                    tallies[mask as usize] += 1;
                }
                assert_eq!(fv.beta, tallies, "{name}, maximal element {}", p.name(m));
            }
        }
    }
    pass(12, "class strategies agree (n <= 4); beta equals descent tallies on ER families (n <= 5)");
}
