mod common;

use std::collections::{BTreeSet, HashSet};

use artin_core::mikado::{
    count_distinct_fractions, count_mikado_a, count_mikado_b, count_rational_normal_forms, type_b_letters_to_a,
    MikadoA, WiringDiagram,
};
use artin_core::{BraidGroup, CoxeterGroup, CoxeterType};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn coprime_pairs_brute_force(g: &CoxeterGroup) -> u64 {
    let mut n = 0;
    for x in g.elements() {
        for y in g.elements() {
            if g.left_descents(x).intersection(g.left_descents(y)).is_empty() {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn mikado_counts() {
    let want = [1, 3, 19, 211];
    for n in 1..=4 {
        assert_eq!(count_mikado_a(n).unwrap(), want[n - 1]);
    }
    for n in 2..=4 {
        let b = BraidGroup::new(CoxeterType::a(n - 1).unwrap()).unwrap();
        assert_eq!(count_mikado_a(n).unwrap(), coprime_pairs_brute_force(b.group()));
        assert_eq!(count_mikado_a(n).unwrap(), count_distinct_fractions(&b) as u64);
    }
    assert_eq!(count_mikado_b(1).unwrap(), 3);
    let b2 = BraidGroup::new(CoxeterType::b(2).unwrap()).unwrap();
    let k = count_mikado_b(2).unwrap();
    assert_eq!(k, coprime_pairs_brute_force(b2.group()));
    assert_eq!(k, count_distinct_fractions(&b2) as u64);
    assert_eq!(k, count_rational_normal_forms(b2.group()) as u64);
    assert!(count_mikado_a(0).is_err());
}

#[test]
fn wiring_diagram_examples() {
    let a2 = BraidGroup::new(CoxeterType::a(2).unwrap()).unwrap();
    let m = MikadoA::new(&a2).unwrap();
    let d = m.wiring(&a2.delta()).unwrap();
    assert_eq!(d.crossings().len(), 3);
    assert!(d.crossings().iter().all(|c| c.over == c.upper));
    let d = m.wiring(&a2.normal_form(&[-1, 2, 1]).unwrap()).unwrap();
    let signs: Vec<i32> = d.letters().iter().map(|l| l.signum()).collect();
    assert_eq!(d.crossings().len(), 3);
    assert_eq!(a2.normal_form(&d.letters()).unwrap(), a2.normal_form(&[-1, 2, 1]).unwrap());
    assert_eq!(signs.iter().filter(|&&s| s < 0).count(), 1);
    let e = m.wiring(&a2.identity()).unwrap();
    assert!(e.crossings().is_empty());
    assert_eq!(e.good_strands().len(), 3);
    assert!(m.wiring(&a2.normal_form(&[1, 1]).unwrap()).is_err());
}

#[test]
fn top_strand_of_a_permutation_braid_is_good() {
    let b = BraidGroup::new(CoxeterType::a(3).unwrap()).unwrap();
    let m = MikadoA::new(&b).unwrap();
    for w in b.group().elements() {
        let d = m.wiring(&b.simple(w)).unwrap();
        assert!(d.good_strands().contains(&3));
    }
}

#[test]
fn rational_braids_are_mikado_in_a3_and_a4() {
    for n in 3..=4 {
        let b = BraidGroup::new(CoxeterType::a(n).unwrap()).unwrap();
        let m = MikadoA::new(&b).unwrap();
        let g = b.group();
        for x in g.elements() {
            for y in g.elements() {
                let nf = b.fraction(x, y);
                assert!(b.is_rational(&nf) && m.is_mikado(&nf), "A{n}");
            }
        }
    }
}

#[test]
fn mikado_iff_rational_on_fuzzed_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let b = BraidGroup::new(CoxeterType::a(3).unwrap()).unwrap();
    let m = MikadoA::new(&b).unwrap();
    let mut non_rational = 0;
    for _ in 0..3000 {
        let w = common::random_word(&mut rng, 3, 8);
        let nf = b.normal_form(&w).unwrap();
        let rational = b.is_rational(&nf);
        non_rational += usize::from(!rational);
        assert_eq!(m.is_mikado(&nf), rational, "{w:?}");
    }
    assert!(non_rational > 1000);
}

#[test]
fn removing_strands_keeps_diagrams_square_free() {
    let b = BraidGroup::new(CoxeterType::a(3).unwrap()).unwrap();
    let m = MikadoA::new(&b).unwrap();
    let g = b.group();
    for x in g.elements() {
        for y in g.elements() {
            let d = m.wiring(&b.fraction(x, y)).unwrap();
            assert!(d.crosses_at_most_once());
            assert_eq!(d.crossings().len(), g.length(b.image(&b.fraction(x, y))));
            for s in 0..4 {
                assert!(d.remove_strand(s).crosses_at_most_once());
            }
        }
    }
}

#[test]
fn good_strands_do_not_depend_on_the_reduced_word() {
    let b = BraidGroup::new(CoxeterType::a(3).unwrap()).unwrap();
    let g = b.group();
    for x in g.elements() {
        for y in g.elements() {
            let nf = b.fraction(x, y);
            let sets: BTreeSet<BTreeSet<usize>> = g
                .all_reduced_words(b.image(&nf))
                .iter()
                .map(|word| {
                    let lift = b.signed_lift(&nf, word).unwrap();
                    WiringDiagram::from_letters(4, &lift).unwrap().good_strands()
                })
                .collect();
            assert_eq!(sets.len(), 1);
        }
    }
}

#[test]
fn type_b_mikado_two_paths_agree() {
    for n in 2..=3 {
        let bb = BraidGroup::new(CoxeterType::b(n).unwrap()).unwrap();
        let a = BraidGroup::new(CoxeterType::a(2 * n - 1).unwrap()).unwrap();
        let m = MikadoA::new(&a).unwrap();
        let g = bb.group();
        let mut seen = HashSet::new();
        for x in g.elements() {
            for y in g.elements() {
                let nf = bb.fraction(x, y);
                let letters = bb.to_letters(&nf);
                assert_eq!(type_b_letters_to_a(n, &letters), common::b_to_a(n, &letters));
                let image = a.normal_form(&type_b_letters_to_a(n, &letters)).unwrap();
                if !seen.insert(image.clone()) {
                    continue;
                }
                let fixed = m.is_mikado_b(&image).unwrap();
                let pairs = m.is_mikado_b_by_pairs(&image).unwrap();
                assert!(fixed && pairs, "B{n}");
            }
        }
    }
    let a3 = BraidGroup::new(CoxeterType::a(3).unwrap()).unwrap();
    let m = MikadoA::new(&a3).unwrap();
    let sigma1 = a3.normal_form(&[1]).unwrap();
    assert!(!m.is_mikado_b(&sigma1).unwrap());
    assert!(!m.is_mikado_b_by_pairs(&sigma1).unwrap());
    assert!(m.is_mikado_b(&a3.normal_form(&[2]).unwrap()).unwrap());
}

#[test]
fn type_b_two_paths_agree_on_fuzzed_symmetric_braids() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let a = BraidGroup::new(CoxeterType::a(3).unwrap()).unwrap();
    let m = MikadoA::new(&a).unwrap();
    for _ in 0..1000 {
        let w = common::random_word(&mut rng, 2, 6);
        let image = a.normal_form(&common::b_to_a(2, &w)).unwrap();
        assert_eq!(m.is_mikado_b(&image).unwrap(), m.is_mikado_b_by_pairs(&image).unwrap(), "{w:?}");
    }
}

#[test]
fn mikado_requires_type_a() {
    let b = BraidGroup::new(CoxeterType::b(2).unwrap()).unwrap();
    assert!(MikadoA::new(&b).is_err());
}

#[test]
fn square_free_test_matches_exhaustive_sign_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for ty in [CoxeterType::a(3).unwrap(), CoxeterType::b(2).unwrap()] {
        let b = BraidGroup::new(ty).unwrap();
        let g = b.group();
        let mut square_free = 0;
        for _ in 0..400 {
            let w = common::random_word(&mut rng, ty.rank, 7);
            let nf = b.normal_form(&w).unwrap();
            let words = g.all_reduced_words(b.image(&nf));
            let k = words[0].len();
            let exhaustive = words.iter().any(|word| {
                (0..1u32 << k).any(|mask| {
                    let lift: Vec<i32> = word
                        .iter()
                        .enumerate()
                        .map(|(i, &s)| if mask >> i & 1 == 1 { -(s as i32 + 1) } else { s as i32 + 1 })
                        .collect();
                    b.normal_form(&lift).unwrap() == nf
                })
            });
            square_free += usize::from(exhaustive);
            assert_eq!(b.is_square_free(&nf), exhaustive, "{ty} {w:?}");
        }
        assert!(square_free > 100);
    }
}
