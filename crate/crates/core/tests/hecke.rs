mod common;

use std::collections::HashMap;
use std::sync::Arc;

use artin_core::dual::DualMonoid;
use artin_core::{BraidGroup, CoxeterElement, CoxeterGroup, CoxeterType, Hecke, HeckeAlgebra, KlTable, Laurent};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Poly = Vec<i64>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_add(a: &mut Poly, b: &[i64], scale_shift: usize, scale: i64) {
    if a.len() < b.len() + scale_shift {
        a.resize(b.len() + scale_shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + scale_shift] += scale * c;
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Poly {
    let mut out = vec![0; (a.len() + b.len()).saturating_sub(1)];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `P_{x,w}` from R-polynomials: `q^{ℓ(w)−ℓ(x)} P(q⁻¹) − P(q) = Σ_{x<y≤w} R_{x,y} P_{y,w}`.
fn kl_by_r_polynomials(g: &CoxeterGroup) -> HashMap<(CoxeterElement, CoxeterElement), Poly> {
    let mut by_length: Vec<CoxeterElement> = g.elements().collect();
    by_length.sort_by_key(|&w| g.length(w));
    let mut r: HashMap<(CoxeterElement, CoxeterElement), Poly> = HashMap::new();
    for &w in &by_length {
        for x in g.elements() {
            let value = if w == g.identity() {
                if x == w { vec![1] } else { vec![] }
            } else {
                let s = g.right_descents(w).first().unwrap();
                let ws = g.mul_gen_right(w, s);
                let xs = g.mul_gen_right(x, s);
                if g.length(xs) < g.length(x) {
                    r[&(xs, ws)].clone()
                } else {
                    let mut out = Vec::new();
                    poly_add(&mut out, &r[&(x, ws)], 1, 1);
                    poly_add(&mut out, &r[&(x, ws)], 0, -1);
                    poly_add(&mut out, &r[&(xs, ws)], 1, 1);
                    trim(out)
                }
            };
            r.insert((x, w), value);
        }
    }
    let mut p = HashMap::new();
    for &w in &by_length {
        p.insert((w, w), vec![1]);
        let mut below: Vec<CoxeterElement> = g.elements().filter(|&x| x != w && g.bruhat_leq(x, w)).collect();
        below.sort_by_key(|&x| std::cmp::Reverse(g.length(x)));
        for x in below {
            let d = g.length(w) - g.length(x);
            let mut sum = Vec::new();
            for y in g.elements().filter(|&y| y != x && g.bruhat_leq(x, y) && g.bruhat_leq(y, w)) {
                poly_add(&mut sum, &poly_mul(&r[&(x, y)], &p[&(y, w)]), 0, 1);
            }
            let low: Poly = (0..=(d - 1) / 2).map(|k| -sum.get(k).copied().unwrap_or(0)).collect();
            p.insert((x, w), trim(low));
        }
    }
    p
}

fn table(ty: CoxeterType) -> KlTable {
    let g = Arc::new(CoxeterGroup::new(ty).unwrap());
    KlTable::new(&HeckeAlgebra::new(g)).unwrap()
}

fn recombine(kl: &KlTable, coeffs: &std::collections::BTreeMap<CoxeterElement, Laurent>, basis: impl Fn(CoxeterElement) -> Hecke) -> Hecke {
    let mut out: Hecke = kl.algebra().zero();
    for (&w, a) in coeffs {
        out.add_scaled(a, &basis(w));
    }
    out
}

#[test]
fn kl_polynomials_match_r_polynomial_oracle() {
    for ty in [CoxeterType::a(3).unwrap(), CoxeterType::b(3).unwrap(), CoxeterType::a(4).unwrap(), CoxeterType::h3()] {
        let kl = table(ty);
        let g = kl.group();
        let oracle = kl_by_r_polynomials(g);
        for w in g.elements() {
            for y in g.elements() {
                let want = oracle.get(&(y, w)).cloned().unwrap_or_default();
                assert_eq!(trim(kl.polynomial(y, w).to_vec()), want, "{ty}");
            }
        }
    }
}

#[test]
fn known_polynomial_in_a3() {
    let kl = table(CoxeterType::a(3).unwrap());
    let g = kl.group();
    let w = g.element_from_word(&[1, 0, 2, 1]).unwrap();
    assert_eq!(trim(kl.polynomial(g.identity(), w).to_vec()), vec![1, 1]);
    assert_eq!(trim(kl.polynomial(g.generator(1), w).to_vec()), vec![1, 1]);
    let s = g.generator(0);
    let alg = kl.algebra();
    let expected = alg.t::<i64>(s).add(&alg.one()).scale(&Laurent::v());
    assert_eq!(kl.c_prime(s), &expected);
}

#[test]
fn quadratic_relation() {
    let kl = table(CoxeterType::b(3).unwrap());
    let alg = kl.algebra();
    for s in 0..3 {
        let t = alg.t::<i64>(kl.group().generator(s));
        let a = t.sub(&alg.one::<i64>().scale(&Laurent::v_pow(-2)));
        let b = t.add(&alg.one());
        assert!(alg.mul(&a, &b).is_zero());
    }
}

#[test]
fn braid_image_is_a_homomorphism_to_units() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let g = Arc::new(CoxeterGroup::new(CoxeterType::a(3).unwrap()).unwrap());
    let alg = HeckeAlgebra::new(g);
    for _ in 0..60 {
        let u = common::random_word(&mut rng, 3, 6);
        let w = common::random_word(&mut rng, 3, 6);
        let joined: Vec<i32> = u.iter().chain(&w).copied().collect();
        let (hu, hw): (Hecke, Hecke) = (alg.braid_image_a(&u).unwrap(), alg.braid_image_a(&w).unwrap());
        assert_eq!(alg.mul(&hu, &hw), alg.braid_image_a(&joined).unwrap());
        let inv: Hecke = alg.braid_image_a(&common::inverse_word(&u)).unwrap();
        assert_eq!(alg.mul(&hu, &inv), alg.one());
        let twisted: Hecke = alg.braid_image_a_prime(&u).unwrap();
        let shift: i32 = u.iter().map(|l| l.signum()).sum();
        assert_eq!(twisted, hu.scale(&Laurent::v_pow(shift)));
    }
}

#[test]
fn canonical_bases_are_bar_invariant_and_related_by_j() {
    for ty in [CoxeterType::a(3).unwrap(), CoxeterType::b(3).unwrap(), CoxeterType::i2(5).unwrap()] {
        let kl = table(ty);
        let alg = kl.algebra();
        let g = kl.group();
        let basis = alg.bar_basis::<i64>();
        for w in g.elements() {
            assert_eq!(&alg.bar(kl.c_prime(w), &basis), kl.c_prime(w), "{ty}");
            assert_eq!(&alg.bar(kl.c(w), &basis), kl.c(w), "{ty}");
            let sign = if g.length(w) % 2 == 0 { Laurent::one() } else { -Laurent::one() };
            assert_eq!(kl.c(w), &alg.j_h(kl.c_prime(w)).scale(&sign), "{ty}");
        }
        assert!(kl.bar_invariance_failures().is_empty());
        assert!(kl.sign_twist_failures().is_empty());
        assert!(kl.unitriangularity_failures().is_empty());
        assert!(kl.degree_bound_failures().is_empty());
        assert!(kl.multiplication_rule_failures().is_empty());
    }
}

#[test]
fn quotients_are_positive_and_expansions_recombine() {
    for ty in [CoxeterType::a(3).unwrap(), CoxeterType::b(3).unwrap()] {
        let kl = table(ty);
        let g = kl.group();
        for x in g.elements() {
            for y in g.elements() {
                let h = kl.standard_quotient(x, y);
                let coeffs = kl.expand_in_c(&h).unwrap();
                assert!(coeffs.values().all(|a| a.is_nonnegative()), "{ty}");
                assert_eq!(recombine(&kl, &coeffs, |w| kl.c(w).clone()), h);
            }
        }
        assert!(kl.quotient_positivity_failures().unwrap().is_empty());
    }
}

#[test]
fn rational_braid_images_are_quotients() {
    let b = BraidGroup::new(CoxeterType::a(3).unwrap()).unwrap();
    let kl = table(CoxeterType::a(3).unwrap());
    let alg = kl.algebra();
    let g = b.group();
    for x in g.elements() {
        for y in g.elements() {
            let nf = b.fraction(x, y);
            let h: Hecke = alg.braid_image_a(&b.to_letters(&nf)).unwrap();
            assert_eq!(h, kl.standard_quotient(x, y));
            let coeffs = kl.expand_in_c(&h).unwrap();
            assert!(coeffs.values().all(|a| a.is_nonnegative()));
        }
    }
}

#[test]
fn simple_dual_braids_are_positive() {
    for ty in [CoxeterType::a(3).unwrap(), CoxeterType::b(3).unwrap(), CoxeterType::i2(5).unwrap(), CoxeterType::i2(6).unwrap()] {
        let b = BraidGroup::new(ty).unwrap();
        let kl = table(ty);
        for c in b.group().standard_coxeter_elements().unwrap() {
            let d = DualMonoid::new(&b, &c).unwrap();
            let report = kl.positivity_report(&d).unwrap();
            assert_eq!(report.len(), d.divisors().len());
            assert!(report.iter().all(|item| item.positive), "{ty}");
            for &x in d.divisors() {
                let h: Hecke = kl.algebra().braid_image_a(&b.to_letters(&d.embed_simple(x).unwrap())).unwrap();
                let coeffs = kl.expand_in_c(&h).unwrap();
                assert_eq!(recombine(&kl, &coeffs, |w| kl.c(w).clone()), h);
                if x == b.group().identity() {
                    assert_eq!(coeffs.len(), 1);
                    assert!(coeffs[&x].is_one());
                }
            }
        }
    }
}

#[test]
fn kl_size_budget() {
    let g = Arc::new(CoxeterGroup::new(CoxeterType::a(4).unwrap()).unwrap());
    assert!(matches!(
        KlTable::with_max_order(&HeckeAlgebra::new(g), 100),
        Err(artin_core::Error::Resource(_))
    ));
}

#[test]
fn laurent_strings_round_trip() {
    let p: Laurent = "3v^-2 + 1 + v^4".parse().unwrap();
    assert_eq!(p.to_string(), "3v^-2 + 1 + v^4");
    assert!(Laurent::zero().is_nonnegative());
}
