mod common;

use std::collections::BTreeSet;

use artin_core::coxeter::type_b_to_a;
use artin_core::{CoxeterGroup, CoxeterType, Error};
use proptest::prelude::*;

fn all_types() -> Vec<CoxeterType> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push(CoxeterType::a(n).unwrap());
    }
    for n in 2..=4 {
        out.push(CoxeterType::b(n).unwrap());
    }
    out.push(CoxeterType::d(4).unwrap());
    for m in 3..=12 {
        out.push(CoxeterType::i2(m).unwrap());
    }
    out.push(CoxeterType::h3());
    out.push(CoxeterType::f4());
    out
}

#[test]
fn orders_match_closed_formulas() {
    let fact = |n: usize| (1..=n).product::<usize>();
    for ty in all_types() {
        let g = CoxeterGroup::new(ty).unwrap();
        let want = match ty.family {
            artin_core::Family::A => fact(ty.rank + 1),
            artin_core::Family::B => (1 << ty.rank) * fact(ty.rank),
            artin_core::Family::D => 192,
            artin_core::Family::I2 => 2 * ty.m.unwrap() as usize,
            artin_core::Family::H3 => 120,
            artin_core::Family::F4 => 1152,
        };
        assert_eq!(g.order(), want, "{ty}");
    }
}

#[test]
fn rank_constraints() {
    assert!(matches!(CoxeterType::a(0), Err(Error::InvalidType(_))));
    assert!(matches!(CoxeterType::b(1), Err(Error::InvalidType(_))));
    assert!(matches!(CoxeterType::d(3), Err(Error::InvalidType(_))));
    assert!(matches!(CoxeterType::i2(1), Err(Error::InvalidType(_))));
}

#[test]
fn type_b_bond_sits_between_the_first_two_generators() {
    for n in 2..=4 {
        let g = CoxeterGroup::new(CoxeterType::b(n).unwrap()).unwrap();
        let t0t1 = g.mul(g.generator(0), g.generator(1));
        assert_eq!(g.element_order(t0t1), 4);
        let w = g.element_from_word(&[0, 1, 0, 1]).unwrap();
        assert_eq!(w, g.element_from_word(&[1, 0, 1, 0]).unwrap());
        assert_eq!(g.length(w), 4);
    }
}

#[test]
fn longest_element_length_is_reflection_count() {
    for ty in all_types() {
        let g = CoxeterGroup::new(ty).unwrap();
        let t = common::reflections_by_conjugation(&g);
        assert_eq!(g.length(g.longest_element()), t.len(), "{ty}");
        assert_eq!(g.reflections().iter().copied().collect::<BTreeSet<_>>(), t, "{ty}");
    }
}

#[test]
fn lengths_agree_with_cayley_distance() {
    for ty in [CoxeterType::a(3).unwrap(), CoxeterType::b(2).unwrap(), CoxeterType::h3()] {
        let g = CoxeterGroup::new(ty).unwrap();
        let mut dist = vec![usize::MAX; g.order()];
        dist[g.identity().index()] = 0;
        let mut queue = std::collections::VecDeque::from([g.identity()]);
        while let Some(w) = queue.pop_front() {
            for s in 0..g.rank() {
                let x = g.mul_gen_right(w, s);
                if dist[x.index()] == usize::MAX {
                    dist[x.index()] = dist[w.index()] + 1;
                    queue.push_back(x);
                }
            }
        }
        for w in g.elements() {
            let word = g.reduced_word(w);
            assert_eq!(g.length(w), dist[w.index()], "{ty}");
            assert_eq!(word.len(), dist[w.index()], "{ty}");
            assert_eq!(g.element_from_word(&word).unwrap(), w);
        }
    }
}

#[test]
fn exchange_property_in_a3() {
    let g = CoxeterGroup::new(CoxeterType::a(3).unwrap()).unwrap();
    for w in g.elements() {
        for s in 0..3 {
            if g.length(g.mul_gen_left(s, w)) < g.length(w) {
                assert!(g.all_reduced_words(w).iter().any(|r| r[0] == s));
            }
        }
    }
}

#[test]
fn reflection_length_matches_search() {
    for ty in [
        CoxeterType::a(3).unwrap(),
        CoxeterType::b(3).unwrap(),
        CoxeterType::d(4).unwrap(),
        CoxeterType::i2(7).unwrap(),
        CoxeterType::h3(),
        CoxeterType::f4(),
    ] {
        let g = CoxeterGroup::new(ty).unwrap();
        let bfs = common::reflection_length_bfs(&g);
        for w in g.elements() {
            assert_eq!(g.reflection_length(w), bfs[w.index()], "{ty}");
        }
    }
}

#[test]
fn reflections_from_every_coxeter_element() {
    for ty in all_types() {
        let g = CoxeterGroup::new(ty).unwrap();
        let t = common::reflections_by_conjugation(&g);
        for c in g.standard_coxeter_elements().unwrap() {
            let got = g.reflections_from_coxeter(c.element, &c.ordering).unwrap();
            assert_eq!(got.len(), t.len(), "{ty} {:?}", c.ordering);
            assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), t, "{ty} {:?}", c.ordering);
        }
    }
}

#[test]
fn bruhat_agrees_with_subwords() {
    for ty in [CoxeterType::a(3).unwrap(), CoxeterType::b(3).unwrap(), CoxeterType::i2(5).unwrap()] {
        let g = CoxeterGroup::new(ty).unwrap();
        for u in g.elements() {
            for w in g.elements() {
                assert_eq!(g.bruhat_leq(u, w), common::bruhat_by_subwords(&g, u, w), "{ty}");
            }
        }
    }
}

#[test]
fn type_b_embedding_is_an_injective_homomorphism() {
    for n in 2..=3 {
        let b = CoxeterGroup::new(CoxeterType::b(n).unwrap()).unwrap();
        let a = CoxeterGroup::new(CoxeterType::a(2 * n - 1).unwrap()).unwrap();
        let mut images = BTreeSet::new();
        for w in b.elements() {
            let image = type_b_to_a(&b, &a, w).unwrap();
            images.insert(image);
            for s in 0..n {
                let lhs = type_b_to_a(&b, &a, b.mul_gen_right(w, s)).unwrap();
                assert_eq!(lhs, a.mul(image, type_b_to_a(&b, &a, b.generator(s)).unwrap()));
            }
        }
        assert_eq!(images.len(), b.order());
    }
}

fn a3() -> &'static CoxeterGroup {
    use std::sync::OnceLock;
    static G: OnceLock<CoxeterGroup> = OnceLock::new();
    G.get_or_init(|| CoxeterGroup::new(CoxeterType::a(3).unwrap()).unwrap())
}

proptest! {
    #[test]
    fn weak_meet_is_a_meet(i in 0usize..24, j in 0usize..24, k in 0usize..24) {
        let g = a3();
        let (x, y, z) = (g.element(i).unwrap(), g.element(j).unwrap(), g.element(k).unwrap());
        let m = g.weak_meet_left(x, y);
        prop_assert_eq!(g.weak_meet_left(x, x), x);
        prop_assert_eq!(m, g.weak_meet_left(y, x));
        prop_assert!(g.is_prefix(m, x) && g.is_prefix(m, y));
        // Greatest lower bound.
        if g.is_prefix(z, x) && g.is_prefix(z, y) {
            prop_assert!(g.is_prefix(z, m));
        }
    }

    #[test]
    fn length_is_subadditive(i in 0usize..24, j in 0usize..24) {
        let g = a3();
        let (x, y) = (g.element(i).unwrap(), g.element(j).unwrap());
        let xy = g.mul(x, y);
        prop_assert!(g.length(xy) <= g.length(x) + g.length(y));
        prop_assert!(g.reflection_length(xy) <= g.reflection_length(x) + g.reflection_length(y));
        prop_assert_eq!(g.length(x) % 2, g.reflection_length(x) % 2);
    }
}
