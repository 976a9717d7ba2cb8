//! Randomised invariants across the algebra, arrangement, evaluator and
//! anyon modules.

use std::collections::HashSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use tee_probe::anyon::AnyonModel;
use tee_probe::arrangement::random::{random_arrangement, random_pie, random_split_map, random_strips};
use tee_probe::arrangement::{Arrangement, Region};
use tee_probe::dsl::{parse_in, render, TripartiteForm, TripartiteTerm};
use tee_probe::evaluator::{eval_area_law, eval_tqft, sphere_entropy_symbolic, tally_tqft, EvalMode, EvalOptions, SymEntropy};
use tee_probe::party::{default_labels, PartySet};
use tee_probe::rational::{frac, int};
use tee_probe::{Classification, InfoQuantity, Rational};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn random_quantity(rng: &mut StdRng, n: usize) -> InfoQuantity {
    let mut q = InfoQuantity::new(&default_labels(n)).unwrap();
    for _ in 0..rng.random_range(0..12) {
        let bits = rng.random_range(1..(1u64 << n));
        let c = frac(rng.random_range(-6..=6), rng.random_range(1..=4));
        q.add_term(PartySet::from_bits(bits), c).unwrap();
    }
    q
}

/// A random single tripartite term over `n >= 3` parties; conditional
/// only when `conditional` and a fourth party is available.
fn random_term(rng: &mut StdRng, n: usize, conditional: bool) -> TripartiteTerm {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut parts = [PartySet::EMPTY; 4];
    for (slot, &p) in order.iter().take(3).enumerate() {
        parts[slot] = PartySet::singleton(p);
    }
    let with_w = conditional && n > 3;
    if with_w {
        parts[3] = PartySet::singleton(order[3]);
    }
    let start = if with_w { 4 } else { 3 };
    for &p in &order[start..] {
        let slot = rng.random_range(0..5);
        if slot < 3 || (slot == 3 && with_w) {
            parts[slot] = parts[slot].union(PartySet::singleton(p));
        }
    }
    TripartiteTerm { x: parts[0], y: parts[1], z: parts[2], w: parts[3] }
}

/// Rational combination of random tripartite terms: 1- and 2-balanced.
fn random_superbalanced(rng: &mut StdRng, n: usize) -> InfoQuantity {
    let labels = default_labels(n);
    let mut q = InfoQuantity::new(&labels).unwrap();
    for _ in 0..rng.random_range(1..=4) {
        let conditional = rng.random_bool(0.4);
        let t = random_term(rng, n, conditional);
        let piece = TripartiteForm::new(&labels, vec![t]).unwrap().expand();
        let c = frac(rng.random_range(-3..=3), rng.random_range(1..=2));
        q = q.checked_add(&piece.scaled(&c)).unwrap();
    }
    q
}

fn label_region(a: &Arrangement, s: PartySet, labels: &[String]) -> Region {
    a.region(&s.labels(labels)).unwrap()
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn render_parse_round_trip(seed: u64, n in 1usize..7) {
        let mut rng = StdRng::seed_from_u64(seed);
        let q = random_quantity(&mut rng, n);
        let back = parse_in(&render(&q), q.parties()).unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn classification_is_relabel_invariant(seed: u64, n in 2usize..7) {
        let mut rng = StdRng::seed_from_u64(seed);
        let q = if rng.random_bool(0.5) { random_quantity(&mut rng, n) } else if n >= 3 { random_superbalanced(&mut rng, n) } else { random_quantity(&mut rng, n) };
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let r = q.relabel(&perm).unwrap();
        prop_assert_eq!(r.classify(), q.classify());
        prop_assert_eq!(r.sum_coeffs(), q.sum_coeffs());
        prop_assert_eq!(r.balance_profile().max_balanced_k(), q.balance_profile().max_balanced_k());
    }

    #[test]
    fn tripartite_expansions_are_superbalanced(seed: u64, n in 3usize..9) {
        let mut rng = StdRng::seed_from_u64(seed);
        let q = random_superbalanced(&mut rng, n);
        let class = q.classify();
        prop_assert!(q.is_empty() || class == Classification::FixedTopology, "{:?}", class);
    }

    #[test]
    fn residues_are_linear(seed: u64, n in 1usize..6, k in 1usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (p, q) = (random_quantity(&mut rng, n), random_quantity(&mut rng, n));
        let k = k.min(n);
        let sum = p.checked_add(&q).unwrap().residues(k);
        let (rp, rq) = (p.residues(k), q.residues(k));
        for (s, v) in &sum {
            let expect = rp.get(s).cloned().unwrap_or_default() + rq.get(s).cloned().unwrap_or_default();
            prop_assert_eq!(v, &expect);
        }
    }

    /// Superbalanced quantities evaluate to `-c·log D` with no K term, on
    /// every valid arrangement.
    #[test]
    fn superbalanced_values_are_topological(seed: u64, n in 3usize..9) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = random_arrangement(&mut rng, n);
        let q = random_superbalanced(&mut rng, n);
        let v = eval_tqft(&q, &a, EvalMode::Paper).unwrap();
        prop_assert_eq!(v, SymEntropy::new(-q.sum_coeffs(), int(0)));
    }

    #[test]
    fn conditional_terms_vanish(seed: u64, n in 4usize..9) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = random_arrangement(&mut rng, n);
        let labels = default_labels(n);
        let t = random_term(&mut rng, n, true);
        let q = TripartiteForm::new(&labels, vec![t]).unwrap().expand();
        prop_assert_eq!(eval_tqft(&q, &a, EvalMode::Paper).unwrap(), SymEntropy::zero());
    }

    #[test]
    fn superbalanced_lengths_cancel(seed: u64, n in 3usize..9) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = random_arrangement(&mut rng, n);
        let q = random_superbalanced(&mut rng, n);
        prop_assert!(eval_area_law(&q, &a).unwrap().lengths_vanish());
    }

    #[test]
    fn single_faces_have_one_component_and_two_punctures(seed: u64, n in 2usize..10) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = if n >= 3 { random_arrangement(&mut rng, n) } else { random_strips(&mut rng, n) };
        for f in a.internal_faces() {
            let counts = a.boundary_punctures(Region::from_bits(1 << f)).unwrap();
            prop_assert_eq!(counts.len(), 1);
            prop_assert!(counts[0] >= 2);
        }
    }

    #[test]
    fn punctures_complement_symmetric_and_additive(seed: u64, n in 3usize..9) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = random_arrangement(&mut rng, n);
        let all = a.all_internal().bits();
        let r = loop {
            let bits = rng.random_range(1..=u64::MAX) & all;
            if bits != 0 { break bits; }
        };
        let r = Region::from_bits(r);
        // complement within the sphere: the remaining internal faces plus O
        let mut inside: HashSet<usize> = HashSet::new();
        let mut outside: HashSet<usize> = HashSet::new();
        for v in 0..a.vertices().len() {
            let vf = a.vertex_faces(v);
            let k = (vf & r.bits()).count_ones();
            if k == 1 || k == 2 { inside.insert(v); }
            let kc = (vf & !r.bits()).count_ones();
            if kc == 1 || kc == 2 { outside.insert(v); }
        }
        prop_assert_eq!(&inside, &outside);
        let per = a.boundary_punctures(r).unwrap();
        prop_assert_eq!(per.iter().sum::<usize>(), a.total_punctures(r).unwrap());
        prop_assert_eq!(inside.len(), a.total_punctures(r).unwrap());
    }

    #[test]
    fn adjacent_pair_rule(seed: u64, n in 3usize..9) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = random_arrangement(&mut rng, n);
        let faces: Vec<usize> = a.internal_faces().collect();
        for &p in &faces {
            for &q in &faces {
                if p >= q { continue; }
                let shared = a.edges().iter().filter(|e| (e.left == p && e.right == q) || (e.left == q && e.right == p)).count();
                if shared != 1 { continue; }
                let single = |f: usize| a.total_punctures(Region::from_bits(1 << f)).unwrap();
                let pair = a.total_punctures(Region::from_bits(1 << p | 1 << q)).unwrap();
                prop_assert_eq!(pair, single(p) + single(q) - 2);
            }
        }
    }

    /// Paper and additive modes agree on quantities whose unions are all
    /// connected.
    #[test]
    fn modes_agree_on_connected_unions(seed: u64, n in 3usize..8) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = random_arrangement(&mut rng, n);
        let labels = default_labels(n);
        let mut q = random_quantity(&mut rng, n);
        let disconnected: Vec<PartySet> = q
            .terms()
            .map(|(s, _)| s)
            .filter(|&s| a.union_components(label_region(&a, s, &labels)).unwrap().len() > 1)
            .collect();
        for s in disconnected {
            let c = q.coefficient(s);
            q.add_term(s, -c).unwrap();
        }
        prop_assert_eq!(eval_tqft(&q, &a, EvalMode::Paper).unwrap(), eval_tqft(&q, &a, EvalMode::Additive).unwrap());
    }

    #[test]
    fn evaluators_are_linear(seed: u64, n in 3usize..8) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = random_arrangement(&mut rng, n);
        let (p, q) = (random_quantity(&mut rng, n), random_quantity(&mut rng, n));
        let c: Rational = frac(rng.random_range(-5..=5), rng.random_range(1..=3));
        let combo = p.checked_add(&q.scaled(&c)).unwrap();
        for mode in [EvalMode::Paper, EvalMode::Additive] {
            let lhs = eval_tqft(&combo, &a, mode).unwrap();
            let rhs = eval_tqft(&p, &a, mode).unwrap() + eval_tqft(&q, &a, mode).unwrap().scaled(&c);
            prop_assert_eq!(lhs, rhs);
        }
        let lhs = eval_area_law(&combo, &a).unwrap();
        let (ap, aq) = (eval_area_law(&p, &a).unwrap(), eval_area_law(&q, &a).unwrap());
        prop_assert_eq!(lhs.c_gamma, ap.c_gamma + aq.c_gamma * &c);
    }

    /// Renaming parties and faces consistently leaves every value unchanged.
    #[test]
    fn relabel_equivariance(seed: u64, n in 3usize..8) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = random_arrangement(&mut rng, n);
        let q = random_quantity(&mut rng, n);
        let labels = default_labels(n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let rq = q.relabel(&perm).unwrap();
        // party i becomes party perm[i]; rename face labels[i] to labels[perm[i]]
        let tmp: Vec<String> = (0..n).map(|i| format!("T{i}")).collect();
        let stage1: Vec<(&str, &str)> = (0..n).map(|i| (labels[i].as_str(), tmp[i].as_str())).collect();
        let stage2: Vec<(&str, &str)> = (0..n).map(|i| (tmp[i].as_str(), labels[perm[i]].as_str())).collect();
        let ra = a.relabel_faces(&stage1).unwrap().relabel_faces(&stage2).unwrap();
        for mode in [EvalMode::Paper, EvalMode::Additive] {
            prop_assert_eq!(eval_tqft(&rq, &ra, mode).unwrap(), eval_tqft(&q, &a, mode).unwrap());
        }
        prop_assert_eq!(eval_area_law(&rq, &ra).unwrap().c_gamma, eval_area_law(&q, &a).unwrap().c_gamma);
        prop_assert_eq!(ra.describe().punctures.values().copied().collect::<Vec<_>>().len(), n);
    }

    #[test]
    fn tally_sums_to_value(seed: u64, n in 3usize..8) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = random_arrangement(&mut rng, n);
        let q = random_quantity(&mut rng, n);
        for mode in [EvalMode::Paper, EvalMode::Additive] {
            let t = tally_tqft(&q, &a, mode, &EvalOptions::default()).unwrap();
            let rows = t.rows.iter().fold(SymEntropy::zero(), |acc, r| acc + r.entropy.scaled(&r.coeff));
            prop_assert_eq!(&rows, &t.value());
            prop_assert_eq!(t.value(), eval_tqft(&q, &a, mode).unwrap());
        }
    }

    #[test]
    fn generated_maps_valid(seed: u64, n in 3usize..12) {
        let mut rng = StdRng::seed_from_u64(seed);
        for a in [random_pie(&mut rng, n), random_strips(&mut rng, n), random_split_map(&mut rng, n)] {
            prop_assert!(a.is_valid(), "{}", a.validate());
            prop_assert_eq!(a.faces().len(), n + 1);
        }
    }
}

#[test]
fn oracle_agreement_all_builtins() {
    for m in AnyonModel::builtins() {
        for k in 2..=8 {
            let bf = m.brute_force(k, 8).unwrap();
            let cf = m.closed_form_entropy(k as i64).unwrap();
            assert!((bf.entropy - cf).abs() < 1e-9, "{} k={k}: {} vs {cf}", m.name, bf.entropy);
            assert!((bf.total_probability - 1.0).abs() < 1e-9);
            let p = m.derived_scalars().unwrap().p;
            for row in &bf.marginals {
                for (x, y) in row.iter().zip(&p) {
                    assert!((x - y).abs() < 1e-9, "{} k={k}: marginal {x} vs {y}", m.name);
                }
            }
        }
    }
}

#[test]
fn puncture_growth_and_abelian_k() {
    for m in AnyonModel::builtins() {
        let s = m.derived_scalars().unwrap();
        let abelian = m.dims.iter().all(|&d| (d - 1.0).abs() < 1e-12);
        assert_eq!(s.k.abs() < 1e-15, abelian, "{}", m.name);
        for k in 2..8 {
            let step = m.closed_form_entropy(k + 1).unwrap() - m.closed_form_entropy(k).unwrap();
            assert!((step - (2.0 * s.d.ln() - s.k)).abs() < 1e-12);
            if s.d > 1.0 {
                assert!(step > 0.0, "{}", m.name);
            }
            if abelian {
                let sym = sphere_entropy_symbolic(k).unwrap();
                assert_eq!(sym.c_log_d, int(2 * (k - 1)));
                assert!((m.closed_form_entropy(k).unwrap() - 2.0 * (k - 1) as f64 * s.d.ln()).abs() < 1e-12);
            }
        }
    }
}
