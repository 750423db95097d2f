mod common;

use std::collections::{BTreeMap, BTreeSet};

use artin_core::coxeter::type_b_to_a;
use artin_core::dual::{
    all_noncrossing_partitions, circle_sequence, dihedral_atoms_closed_form, hurwitz_orbit_in_braids,
    hurwitz_orbit_in_group, ncp_decode, ncp_encode, DualMonoid, NoncrossingPartition,
};
use artin_core::{BraidGroup, CoxeterElement, CoxeterGroup, CoxeterType, Error, StandardCoxeterElement};

fn monoids(ty: CoxeterType) -> (BraidGroup, Vec<DualMonoid>) {
    let b = BraidGroup::new(ty).unwrap();
    let duals = b
        .group()
        .standard_coxeter_elements()
        .unwrap()
        .iter()
        .map(|c| DualMonoid::new(&b, c).unwrap())
        .collect();
    (b, duals)
}

fn coxeter(g: &CoxeterGroup, ordering: &[usize]) -> StandardCoxeterElement {
    let element = g.element_from_word(ordering).unwrap();
    StandardCoxeterElement { element, ordering: ordering.to_vec() }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All tuples of `k` reflections with product `x`.
fn factorizations(g: &CoxeterGroup, t: &[CoxeterElement], x: CoxeterElement, k: usize) -> BTreeSet<Vec<CoxeterElement>> {
    let mut out = BTreeSet::new();
    let mut frontier = vec![(g.identity(), Vec::new())];
    for _ in 0..k {
        let mut next = Vec::new();
        for (w, tuple) in frontier {
            for &r in t {
                let mut tuple: Vec<CoxeterElement> = tuple.clone();
                tuple.push(r);
                next.push((g.mul(w, r), tuple));
            }
        }
        frontier = next;
    }
    for (w, tuple) in frontier {
        if w == x {
            out.insert(tuple);
        }
    }
    out
}

#[test]
fn divisor_counts_and_independent_enumeration() {
    let cases = [
        (CoxeterType::a(2).unwrap(), 5),
        (CoxeterType::a(3).unwrap(), 14),
        (CoxeterType::a(4).unwrap(), 42),
        (CoxeterType::b(2).unwrap(), binomial(4, 2)),
        (CoxeterType::b(3).unwrap(), binomial(6, 3)),
        (CoxeterType::d(4).unwrap(), 50),
        (CoxeterType::i2(7).unwrap(), 9),
    ];
    for (ty, want) in cases {
        let (b, duals) = monoids(ty);
        let g = b.group();
        let lt = common::reflection_length_bfs(g);
        for d in &duals {
            let c = d.coxeter_element().element;
            let direct: BTreeSet<_> = g.elements().filter(|&x| common::t_divides(g, &lt, x, c)).collect();
            assert_eq!(d.divisors().iter().copied().collect::<BTreeSet<_>>(), direct, "{ty}");
            assert_eq!(direct.len(), want, "{ty}");
        }
    }
}

#[test]
fn divisors_are_noncrossing_partitions() {
    for ty in [CoxeterType::a(3).unwrap(), CoxeterType::a(4).unwrap(), CoxeterType::b(2).unwrap(), CoxeterType::b(3).unwrap()] {
        let (b, duals) = monoids(ty);
        let g = b.group();
        for d in &duals {
            let c = d.coxeter_element().element;
            let decoded: BTreeSet<_> = all_noncrossing_partitions(g, c)
                .unwrap()
                .iter()
                .map(|p| ncp_decode(g, p, c).unwrap())
                .collect();
            assert_eq!(decoded, d.divisors().iter().copied().collect(), "{ty}");
            for &x in d.divisors() {
                let p = ncp_encode(g, x, c).unwrap();
                assert!(p.is_noncrossing());
                assert_eq!(p.is_symmetric(), ty.family == artin_core::Family::B, "{ty}");
                assert_eq!(ncp_decode(g, &p, c).unwrap(), x);
            }
        }
    }
}

#[test]
fn symmetric_b5_partition() {
    let g = CoxeterGroup::new(CoxeterType::b(5).unwrap()).unwrap();
    let c = coxeter(&g, &[1, 2, 0, 4, 3]).element;
    let sequence = circle_sequence(&g, c).unwrap();
    let p = NoncrossingPartition { sequence, blocks: vec![vec![-5, -4, -1], vec![5, 4, 1], vec![2, 3, -2, -3]] };
    assert!(p.is_noncrossing() && p.is_symmetric());
    let x = ncp_decode(&g, &p, c).unwrap();
    assert!(g.abs_divides(x, c));
    let blocks: BTreeSet<BTreeSet<i32>> =
        ncp_encode(&g, x, c).unwrap().blocks.into_iter().map(|b| b.into_iter().collect()).collect();
    let want: BTreeSet<BTreeSet<i32>> =
        p.blocks.iter().map(|b| b.iter().copied().collect()).collect();
    assert_eq!(blocks, want);
    // A pair of 3-cycles swapped by negation gives 2, the balanced 4-cycle 2.
    assert_eq!(g.reflection_length(x), 4);
}

#[test]
fn b_divisors_agree_with_the_type_a_embedding() {
    for n in 2..=3 {
        let (b, duals) = monoids(CoxeterType::b(n).unwrap());
        let g = b.group();
        let a = CoxeterGroup::new(CoxeterType::a(2 * n - 1).unwrap()).unwrap();
        let lt_a = common::reflection_length_bfs(&a);
        let lt_b = common::reflection_length_bfs(g);
        for d in &duals {
            let c = d.coxeter_element().element;
            let ca = type_b_to_a(g, &a, c).unwrap();
            for x in g.elements() {
                let xa = type_b_to_a(g, &a, x).unwrap();
                assert_eq!(d.is_divisor(x), common::t_divides(&a, &lt_a, xa, ca));
                for &y in d.divisors() {
                    let ya = type_b_to_a(g, &a, y).unwrap();
                    assert_eq!(
                        common::t_divides(g, &lt_b, x, y),
                        common::t_divides(&a, &lt_a, xa, ya),
                        "B{n}"
                    );
                }
            }
        }
    }
}

#[test]
fn simple_dual_braids_are_rational_lifts() {
    for ty in [
        CoxeterType::a(3).unwrap(),
        CoxeterType::b(3).unwrap(),
        CoxeterType::i2(7).unwrap(),
        CoxeterType::h3(),
    ] {
        let (b, duals) = monoids(ty);
        for d in &duals {
            for &x in d.divisors() {
                let nf = d.embed_simple(x).unwrap();
                assert_eq!(b.image(&nf), x);
                assert!(b.is_rational(&nf), "{ty}");
            }
        }
    }
}

#[test]
fn embedding_is_multiplicative_and_factorization_independent() {
    for ty in [CoxeterType::a(3).unwrap(), CoxeterType::b(3).unwrap(), CoxeterType::d(4).unwrap()] {
        let (b, duals) = monoids(ty);
        let g = b.group();
        let t: Vec<_> = common::reflections_by_conjugation(g).into_iter().collect();
        for d in &duals {
            for &y in d.divisors() {
                let by = d.embed_simple(y).unwrap();
                for &x in d.divisors().iter().filter(|&&x| g.abs_divides(x, y)) {
                    let rest = g.mul(g.inverse(x), y);
                    assert_eq!(b.mul(&d.embed_simple(x).unwrap(), &d.embed_simple(rest).unwrap()), by, "{ty}");
                }
                if ty.family == artin_core::Family::A {
                    for f in factorizations(g, &t, y, g.reflection_length(y)) {
                        assert_eq!(d.embed_factorization(&f).unwrap(), by);
                    }
                }
            }
        }
    }
}

#[test]
fn t_reduced_factorizations() {
    let (_, duals) = monoids(CoxeterType::a(3).unwrap());
    for d in &duals {
        let g = d.group();
        for &x in d.divisors() {
            let f = d.t_reduced_factorization(x).unwrap();
            assert_eq!(f.len(), g.reflection_length(x));
            assert!(f.iter().all(|&r| g.is_reflection(r)));
            assert_eq!(f.iter().fold(g.identity(), |acc, &r| g.mul(acc, r)), x);
            for i in 0..f.len() {
                for j in i + 1..f.len() {
                    assert_eq!(g.reflection_length(g.mul(f[i], f[j])), 2);
                }
            }
        }
        let outside = g.elements().find(|&x| !d.is_divisor(x)).unwrap();
        assert!(matches!(d.t_reduced_factorization(outside), Err(Error::Domain(_))));
        assert!(matches!(d.embed_simple(outside), Err(Error::Domain(_))));
    }
}

#[test]
fn classical_lift_of_the_coxeter_element() {
    for ty in [CoxeterType::a(4).unwrap(), CoxeterType::b(3).unwrap(), CoxeterType::f4()] {
        let (b, duals) = monoids(ty);
        for d in &duals {
            let c = d.coxeter_element();
            let letters: Vec<i32> = c.ordering.iter().map(|&s| s as i32 + 1).collect();
            assert_eq!(d.embed_simple(c.element).unwrap(), b.normal_form(&letters).unwrap());
            assert!(d.embed_simple(b.group().identity()).unwrap().is_identity());
        }
    }
}

#[test]
fn orientation_changes_the_atom() {
    let b = BraidGroup::new(CoxeterType::a(2).unwrap()).unwrap();
    let g = b.group();
    let t = g.element_from_word(&[0, 1, 0]).unwrap();
    let d = DualMonoid::new(&b, &coxeter(g, &[0, 1])).unwrap();
    let d2 = DualMonoid::new(&b, &coxeter(g, &[1, 0])).unwrap();
    assert_eq!(d.embed_simple(t).unwrap(), b.normal_form(&[1, 2, -1]).unwrap());
    assert_eq!(d2.embed_simple(t).unwrap(), b.normal_form(&[-1, 2, 1]).unwrap());
    assert_ne!(d.embed_simple(t).unwrap(), d2.embed_simple(t).unwrap());
}

#[test]
fn dual_relations_hold_for_independently_listed_triples() {
    for ty in [CoxeterType::a(2).unwrap(), CoxeterType::a(3).unwrap(), CoxeterType::i2(5).unwrap(), CoxeterType::d(4).unwrap()] {
        let (b, duals) = monoids(ty);
        let g = b.group();
        let lt = common::reflection_length_bfs(g);
        let t: Vec<_> = common::reflections_by_conjugation(g).into_iter().collect();
        for d in &duals {
            let c = d.coxeter_element().element;
            let mut triples = 0;
            for &t1 in &t {
                for &t2 in &t {
                    let p = g.mul(t1, t2);
                    if t1 == t2 || lt[p.index()] != 2 || !common::t_divides(g, &lt, p, c) {
                        continue;
                    }
                    let t3 = g.conjugate(g.inverse(t2), t1);
                    let a = |r| &d.atom(r).unwrap().braid;
                    assert_eq!(b.mul(a(t1), a(t2)), b.mul(a(t2), a(t3)), "{ty}");
                    triples += 1;
                }
            }
            let report = d.verify_dual_relations();
            assert!(report.iter().all(|r| r.holds));
            assert_eq!(report.len(), triples, "{ty}");
        }
    }
}

#[test]
fn dihedral_atoms_match_the_closed_form() {
    for m in 3..=12 {
        let b = BraidGroup::new(CoxeterType::i2(m).unwrap()).unwrap();
        let g = b.group();
        let d = DualMonoid::new(&b, &coxeter(g, &[0, 1])).unwrap();
        // (s t s ⋯ of length k)(s t s ⋯ of length k − 1)⁻¹
        let alt = |k: usize| (0..k).map(|i| if i % 2 == 0 { 1 } else { 2 }).collect::<Vec<i32>>();
        let closed: BTreeSet<_> = (1..=m as usize)
            .map(|k| {
                let mut w = alt(k);
                w.extend(common::inverse_word(&alt(k - 1)));
                b.normal_form(&w).unwrap()
            })
            .collect();
        let atoms: BTreeSet<_> = d.atoms().values().map(|a| a.braid.clone()).collect();
        assert_eq!(atoms, closed, "I2({m})");
        assert_eq!(dihedral_atoms_closed_form(&b).unwrap().into_iter().collect::<BTreeSet<_>>(), closed);
    }
}

#[test]
fn hurwitz_orbits() {
    for ty in [CoxeterType::a(3).unwrap(), CoxeterType::b(3).unwrap(), CoxeterType::i2(6).unwrap()] {
        let (b, duals) = monoids(ty);
        let g = b.group();
        let t: Vec<_> = common::reflections_by_conjugation(g).into_iter().collect();
        for d in &duals {
            let c = d.coxeter_element();
            let start: Vec<_> = c.ordering.iter().map(|&s| g.generator(s)).collect();
            let orbit = hurwitz_orbit_in_group(g, start);
            assert_eq!(orbit, factorizations(g, &t, c.element, g.rank()), "{ty}");

            let lifts: Vec<_> = c.ordering.iter().map(|&s| b.normal_form(&[s as i32 + 1]).unwrap()).collect();
            let braid_orbit = hurwitz_orbit_in_braids(&b, lifts);
            let atoms: BTreeMap<_, _> = d.atoms().iter().map(|(&r, a)| (a.braid.clone(), r)).collect();
            let projected: BTreeSet<Vec<CoxeterElement>> = braid_orbit
                .iter()
                .map(|tuple| tuple.iter().map(|x| *atoms.get(x).expect("orbit entries are atoms")).collect())
                .collect();
            assert_eq!(braid_orbit.len(), projected.len());
            assert_eq!(projected, orbit);
        }
    }
}

#[test]
fn linear_coxeter_fractions_are_bruhat_increasing() {
    for n in 2..=4 {
        let b = BraidGroup::new(CoxeterType::a(n).unwrap()).unwrap();
        let g = b.group();
        let order: Vec<usize> = (0..n).collect();
        let d = DualMonoid::new(&b, &coxeter(g, &order)).unwrap();
        let mut checked = 0;
        for &u in d.divisors().iter().filter(|&&u| u != g.identity()) {
            let (x, y) = b.fraction_form(&d.embed_simple(u).unwrap()).unwrap();
            assert!(x != y && common::bruhat_by_subwords(g, x, y), "A{n}");
            checked += 1;
        }
        if n == 3 {
            assert_eq!(checked, 13);
        }
        assert!(d.bruhat_fraction_check().unwrap().iter().all(|w| w.holds));
    }
}
