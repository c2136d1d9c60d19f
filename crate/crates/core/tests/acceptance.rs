//! End-to-end checks, one line of output per criterion.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::{Duration, Instant};

use motifalg::graph::named::named_graph;
use motifalg::graph::{enumerate_exact, enumerate_graphs, CanonicalKey, Graph, GraphKind, OrderedGraph};
use motifalg::linearize::{linearize_polynomial, linearize_product, Basis, CountPolynomial};
use motifalg::motif::{blowup_pad, example_f, integer, rational, symmetrize, Motif, MotifParameter, NonnegScan, Verdict};
use motifalg::oraclesim::{build_set_instantiator, naive_indsub_strategy};
use motifalg::relstruct::{conv, conv_inverse, indsub_struct, MixedType, RelStructure, Slot, Variant};
use motifalg::universes::{count_param_subsets, enumerate_subspaces, gaussian_binomial, r_stirling, CountMode, ParamSet};
use motifalg::witness::{evaluation_matrix, recover_coefficients};
use motifalg::Caps;
use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn caps() -> Caps {
    Caps::default()
}

fn key(name: &str) -> CanonicalKey {
    named_graph(name).unwrap().key(&caps()).unwrap()
}

fn param(terms: &[(&str, i64)]) -> MotifParameter<Graph> {
    MotifParameter::from_terms((), terms.iter().map(|&(n, c)| (key(n), integer(c))))
}

fn linearization_identity() -> Check {
    let k1 = key("K1");
    let square = linearize_product::<Graph>(&(), &[k1.clone(), k1.clone()], &caps()).map_err(|e| e.to_string())?;
    let want = param(&[("K2", 2), ("I2", 2), ("K1", 1)]);
    ensure(square.terms() == want.terms(), || format!("#K1^2 gave {square:?}"))?;

    let mut p = CountPolynomial::<Graph>::new((), Basis::Monomial, vec![k1]);
    p.add_term(vec![2], integer(1)).unwrap();
    p.add_term(vec![1], integer(-2)).unwrap();
    p.add_term(vec![0], integer(1)).unwrap();
    let lin = linearize_polynomial(&p, &caps()).map_err(|e| e.to_string())?;
    let want = param(&[("K2", 2), ("I2", 2), ("K1", -1), ("K0", 1)]);
    ensure(lin.terms() == want.terms(), || format!("(#K1-1)^2 gave {lin:?}"))
}

fn example_f_scan() -> Check {
    let f = example_f(&caps());
    let at_k3 = f.evaluate(&Graph::complete(3)).unwrap();
    ensure(at_k3 == integer(2), || format!("f(K3) = {at_k3}"))?;
    let seven = enumerate_exact(7, GraphKind::Unordered, &caps()).unwrap().len();
    ensure(seven == 1044, || format!("{seven} classes on 7 vertices"))?;
    match f.check_nonnegative_upto(7, &caps()).map_err(|e| e.to_string())? {
        // 1 + 1 + 2 + 4 + 11 + 34 + 156 + 1044 classes on at most 7 vertices
        NonnegScan::AllNonnegative { checked } => ensure(checked == 1253, || format!("checked {checked}"))?,
        NonnegScan::Counterexample { key, value, .. } => return Err(format!("f({key:?}) = {value}")),
    }
    let c = f.classify();
    ensure(c.verdict == Verdict::NegativeCoefficient, || format!("verdict {:?}", c.verdict))?;
    let w = c.witness.ok_or("no witness")?;
    ensure(w.key == key("triangle") && w.coefficient == integer(-1), || format!("witness {:?}", w.key))
}

fn linearization_oracle() -> Check {
    let small: Vec<Graph> = (0..=3).flat_map(common::classes).collect();
    let targets: Vec<Graph> = (0..=5).flat_map(common::classes).collect();
    let mut products: Vec<Vec<&Graph>> = small.iter().map(|a| vec![a]).collect();
    for (i, a) in small.iter().enumerate() {
        for b in &small[i..] {
            products.push(vec![a, b]);
        }
    }
    for parts in &products {
        let keys: Vec<_> = parts.iter().map(|g| g.key(&caps()).unwrap()).collect();
        let phi = linearize_product::<Graph>(&(), &keys, &caps()).map_err(|e| e.to_string())?;
        for g in &targets {
            let want: u64 = parts.iter().map(|h| common::indsub(h, g)).product();
            let got = phi.evaluate(g).unwrap();
            ensure(got == integer(want as i64), || format!("{parts:?} on {g:?}: {got} vs {want}"))?;
        }
    }
    Ok(())
}

fn triangular_structure() -> Check {
    let keys = enumerate_graphs(5, GraphKind::Unordered, &caps()).unwrap();
    let m = evaluation_matrix::<Graph>(&(), &keys).map_err(|e| e.to_string())?;
    for (i, row) in m.entries.iter().enumerate() {
        for (j, &a) in row.iter().enumerate() {
            let want = common::indsub(&m.index[i].graph(), &m.index[j].graph());
            ensure(a == want, || format!("A[{i}][{j}] = {a}, brute force {want}"))?;
            ensure(if i == j { a == 1 } else { i < j || a == 0 }, || format!("A[{i}][{j}] = {a}"))?;
        }
    }
    let support = enumerate_graphs(4, GraphKind::Unordered, &caps()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let phi = MotifParameter::<Graph>::from_terms(
            (),
            support
                .iter()
                .filter_map(|k| {
                    rng.gen_bool(0.5)
                        .then(|| (k.clone(), rational(rng.gen_range(-9..=9), rng.gen_range(1..=4))))
                })
                .collect::<Vec<_>>(),
        );
        let values: BTreeMap<_, _> = support.iter().map(|k| (k.clone(), phi.evaluate(&k.graph()).unwrap())).collect();
        let back = recover_coefficients::<Graph>(&(), &values, &support, &caps()).map_err(|e| e.to_string())?;
        ensure(back.terms() == phi.terms(), || format!("round trip changed {phi:?}"))?;
    }
    Ok(())
}

fn symmetrization() -> Check {
    let graphs: Vec<Graph> = (0..=4).flat_map(common::classes).collect();
    for h in &graphs {
        let phi = MotifParameter::<Graph>::from_terms((), [(h.key(&caps()).unwrap(), integer(1))]);
        let ordered = symmetrize(&phi, &caps()).map_err(|e| e.to_string())?;
        for g in &graphs {
            // the orderings of H, counted with the fixed order of G
            let via_orders: BigRational = ordered
                .terms()
                .iter()
                .map(|(k, c)| c * integer(common::indsub_ordered(&k.graph(), g) as i64))
                .sum();
            let direct = common::indsub(h, g);
            ensure(via_orders == integer(direct as i64), || format!("{h:?} in {g:?}: {via_orders} vs {direct}"))?;
            let lib = ordered.evaluate(&OrderedGraph::new(g.clone())).unwrap();
            ensure(lib == integer(direct as i64), || format!("{h:?} in {g:?}: library {lib}"))?;
        }
    }
    Ok(())
}

fn set_instantiators() -> Check {
    let caps = caps();
    let k2 = param(&[("K2", 1)]);
    let phi = symmetrize(&k2, &caps).map_err(|e| e.to_string())?;
    let s = naive_indsub_strategy(&Graph::complete(2), &caps).map_err(|e| e.to_string())?;
    for (name, root) in [("K2", Graph::complete(2)), ("P3", Graph::path(3)), ("K3", Graph::complete(3))] {
        let root = OrderedGraph::new(root);
        let inst = build_set_instantiator(&s, &root, &phi, 2024, 2, 8).map_err(|e| format!("{name}: {e}"))?;
        let report = inst.verify(&phi).map_err(|e| e.to_string())?;
        ensure(report.ok(), || format!("{name}: {:?}", report.violations))?;
        if name == "K3" {
            let accepting = inst.inst(0b111).accepting.len();
            let f = example_f(&caps).evaluate(&Graph::complete(3)).unwrap();
            ensure(accepting == 3 && f == integer(2), || format!("{accepting} paths, f = {f}"))?;
        }
    }
    Ok(())
}

/// Subspaces of `F_p^d` as sorted vector lists, grown one vector at a time.
fn brute_subspaces(d: usize, p: u32) -> Vec<BTreeSet<Vec<Vec<u32>>>> {
    let vectors: Vec<Vec<u32>> = (0..p.pow(d as u32))
        .map(|mut c| {
            (0..d)
                .map(|_| {
                    let x = c % p;
                    c /= p;
                    x
                })
                .collect()
        })
        .collect();
    let span_with = |space: &Vec<Vec<u32>>, v: &Vec<u32>| -> Vec<Vec<u32>> {
        let mut out: BTreeSet<Vec<u32>> = BTreeSet::new();
        for u in space {
            for a in 0..p {
                out.insert(u.iter().zip(v).map(|(x, y)| (x + a * y) % p).collect());
            }
        }
        out.into_iter().collect()
    };
    let mut layers = vec![BTreeSet::from([vec![vec![0; d]]])];
    for _ in 0..d {
        let mut next = BTreeSet::new();
        for space in layers.last().unwrap() {
            for v in &vectors {
                if !space.contains(v) {
                    next.insert(span_with(space, v));
                }
            }
        }
        layers.push(next);
    }
    layers
}

fn universe_formulas() -> Check {
    for p in [2, 3] {
        for d in 0..=4 {
            let layers = brute_subspaces(d, p);
            for (k, layer) in layers.iter().enumerate() {
                let formula = gaussian_binomial(d, k, p).map_err(|e| e.to_string())?;
                ensure(formula == BigUint::from(layer.len()), || format!("[{d} {k}]_{p}: {formula} vs {}", layer.len()))?;
                let listed = enumerate_subspaces(d, k, p).map_err(|e| e.to_string())?.len();
                ensure(listed == layer.len(), || format!("listed {listed} subspaces for [{d} {k}]_{p}"))?;
            }
        }
    }
    ensure(gaussian_binomial(2, 1, 2).unwrap() == BigUint::from(3u32), || "[2 1]_2".into())?;
    ensure(gaussian_binomial(4, 2, 2).unwrap() == BigUint::from(35u32), || "[4 2]_2".into())?;

    let mut sets: Vec<ParamSet> = (0..=3).map(|n| ParamSet::canonical(2, n).unwrap()).collect();
    sets.push(ParamSet::new(2, vec![1, 0, 0], vec![vec![0, 2]]).unwrap());
    sets.push(ParamSet::new(2, vec![0, 1, 1], vec![vec![1], vec![0, 2]]).unwrap());
    for x in &sets {
        for m in 0..=x.params() + 1 {
            let f = count_param_subsets(x, m, CountMode::Formula).map_err(|e| e.to_string())?;
            let b = count_param_subsets(x, m, CountMode::BruteForce).map_err(|e| e.to_string())?;
            ensure(f == b, || format!("{x:?}, m = {m}: formula {f}, brute force {b}"))?;
        }
    }
    // partitions of {1,2,3} into two blocks with 1 and 2 apart: {1,3}{2} and {1}{2,3}
    ensure(r_stirling(3, 2, 2) == BigUint::from(2u32), || "{3 brace 2}_2".into())
}

fn conv_checks() -> Check {
    let caps = caps();
    let variants = [Variant::Set, Variant::Multiset, Variant::ListNoRep, Variant::ListRep];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..256 {
        let slots = (0..rng.gen_range(1..=2))
            .map(|_| Slot::new(rng.gen_range(1..=3), variants[rng.gen_range(0..4)]).unwrap())
            .collect();
        let ty = MixedType::new(slots);
        let a = RelStructure::random(&ty, rng.gen_range(0..=4), true, 0.35, &mut rng);
        let c = conv(&a).map_err(|e| e.to_string())?;
        let back = conv_inverse(&c, &ty).map_err(|e| e.to_string())?;
        ensure(back == a, || format!("sample {i}: round trip changed {a:?}"))?;
        let kept: Vec<usize> = (0..a.n()).filter(|_| rng.gen_bool(0.6)).collect();
        let sub = a.induced(&kept);
        let other = RelStructure::random(&ty, rng.gen_range(0..=3), true, 0.35, &mut rng);
        for b in [sub, other] {
            let left = indsub_struct(&b, &a, &caps).map_err(|e| e.to_string())?;
            let right = indsub_struct(&conv(&b).unwrap(), &c, &caps).map_err(|e| e.to_string())?;
            ensure(left == right, || format!("sample {i}: {left} vs {right} after conv"))?;
        }
    }
    Ok(())
}

fn padding_neutrality() -> Check {
    let ordered: Vec<Graph> = (0..=3).flat_map(common::all_labeled).collect();
    let pure: Vec<&Graph> = ordered.iter().filter(|g| g.is_pure()).collect();
    let mut phis: Vec<MotifParameter<OrderedGraph>> = pure
        .iter()
        .map(|h| MotifParameter::from_terms((), [(CanonicalKey::literal(h).unwrap(), integer(1))]))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        phis.push(MotifParameter::from_terms(
            (),
            pure.iter()
                .map(|h| (CanonicalKey::literal(h).unwrap(), integer(rng.gen_range(-5..=5))))
                .collect::<Vec<_>>(),
        ));
    }
    for phi in &phis {
        for g in &ordered {
            let g = OrderedGraph::new(g.clone());
            let base = phi.evaluate(&g).unwrap();
            for k in 0..=5 {
                let padded = phi.evaluate(&blowup_pad(&g, k)).unwrap();
                ensure(padded == base, || format!("{phi:?} on {g:?} padded by {k}: {padded} vs {base}"))?;
            }
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("linearization identity", linearization_identity, Duration::from_secs(1)),
        ("example f: value, scan to 7 vertices, verdict", example_f_scan, Duration::from_secs(60)),
        ("linearization against brute-force counts", linearization_oracle, Duration::from_secs(60)),
        ("triangular matrix and coefficient recovery", triangular_structure, Duration::from_secs(60)),
        ("symmetrization identity", symmetrization, Duration::from_secs(60)),
        ("set-instantiators for K2, P3, K3", set_instantiators, Duration::from_secs(30)),
        ("universe counting formulas", universe_formulas, Duration::from_secs(10)),
        ("conv round trip and count commutation", conv_checks, Duration::from_secs(60)),
        ("padding neutrality", padding_neutrality, Duration::from_secs(60)),
    ];
    let mut failures = Vec::new();
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= *limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
        });
        let line = match &result {
            Ok(()) => format!("criterion {}: PASS  {name} ({elapsed:.2?})", i + 1),
            Err(e) => format!("criterion {}: FAIL  {name}: {e}", i + 1),
        };
        writeln!(out, "{line}").unwrap();
        if result.is_err() {
            failures.push(line);
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
