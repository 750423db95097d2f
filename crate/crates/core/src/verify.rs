//! Whole-group sweeps behind `artin verify`. Every sweep is exact; reports
//! list items sorted by key, so output is stable across runs.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coxeter::{CoxeterElement, CoxeterGroup, CoxeterType, Family, StandardCoxeterElement};
use crate::dual::{
    dihedral_atoms_closed_form, hurwitz_orbit_in_braids, hurwitz_orbit_in_group, reduced_reflection_factorizations,
    DualMonoid,
};
use crate::error::{Error, Result};
use crate::garside::BraidGroup;
use crate::hecke::{word_key, HeckeAlgebra, KlTable, KL_DEFAULT_MAX_ORDER};
use crate::mikado::{count_distinct_fractions, count_rational_normal_forms, type_b_letters_to_a, MikadoA};
use crate::tl::{fg_projection_failures, positivity_tl_report, triangularity_check, zinno_matrix, TemperleyLieb};

/// A checkable statement and the names it answers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem {
    pub id: &'static str,
    pub alias: &'static str,
    pub summary: &'static str,
    /// Reports evidence only; a failing item does not fail the run.
    pub evidence_only: bool,
}

const fn thm(id: &'static str, alias: &'static str, summary: &'static str) -> Theorem {
    Theorem { id, alias, summary, evidence_only: false }
}

pub const THEOREMS: &[Theorem] = &[
    thm("prop-3.2", "reflections-from-coxeter", "the c-ordered reflection sequence lists every reflection"),
    thm("cor-3.4", "parabolic-divisors", "every divisor of c completes T-additively to c"),
    thm("prop-3.5", "dual-presentation", "dual braid relations hold among the atoms"),
    thm("thm-3.7", "hurwitz-transitivity", "Hurwitz orbits are all reduced T-factorizations, also for braids"),
    thm("prop-3.9", "dual-atoms", "the conjugation formula gives one rational atom per reflection"),
    thm("prop-4.4", "rational-fractions", "b(x)^-1 b(y) are exactly the braids between Delta^-1 and Delta"),
    thm("lemma-4.5", "signed-lift", "rational braids are signed lifts of reduced words"),
    thm("thm-5.9", "mikado-equivalence", "type A Mikado braids are the rational braids"),
    thm("thm-5.13", "dual-simples-mikado", "type A simple dual braids are Mikado braids"),
    thm("prop-5.14", "linear-coxeter-bruhat", "for c = s1..sn simple dual braids are b(x)^-1 b(y) with x < y"),
    thm("thm-6.4", "mikado-b-equivalence", "type B rational braids are symmetric Mikado braids"),
    thm("thm-6.9", "dual-simples-mikado-b", "type B simple dual braids are symmetric Mikado braids"),
    thm("thm-7.1", "dual-simples-rational", "simple dual braids are rational"),
    thm("thm-8.2", "kl-quotient-positivity", "T_x^-1 T_y is positive on the C basis"),
    thm("thm-8.5", "kl-dual-positivity", "images of simple dual braids are positive on the C basis"),
    Theorem {
        id: "conj-8.6",
        alias: "type-d-evidence",
        summary: "type D simple dual braids: rationality and positivity evidence",
        evidence_only: true,
    },
    thm("thm-8.11", "tl-canonical-projection", "theta maps C'_w to b_w or to zero"),
    thm("thm-8.13", "zinno-basis", "Zinno matrices are triangular with unit determinant"),
    thm("thm-8.17", "tl-positivity", "Zinno elements have sign-twisted positive coordinates"),
    thm("kl-checks", "kl-consistency", "bar invariance, C/C' twist, unitriangularity, degree bounds"),
];

/// Finds a theorem by id or alias; `cor-3.8` shares the Hurwitz sweep.
pub fn lookup(name: &str) -> Option<&'static Theorem> {
    let name = if name == "cor-3.8" { "thm-3.7" } else { name };
    THEOREMS.iter().find(|t| t.id == name || t.alias == name)
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// 0-based generator order of a single Coxeter element; all when absent.
    pub ordering: Option<Vec<usize>>,
    /// Raised rank (or dihedral `m`) limit; also lifts the KL size budget.
    pub budget: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportItem {
    pub key: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub command: String,
    pub theorem: String,
    pub alias: String,
    pub group: String,
    pub coxeter_elements: Vec<Vec<usize>>,
    pub items: Vec<ReportItem>,
    pub counts: BTreeMap<String, u64>,
    pub version: String,
    pub evidence_only: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// Whether `ty` fits the default budget: `A ≤ 5`, `B ≤ 4`, `D_4`, `I2(m ≤ 12)`, `H3`, `F4`.
pub fn within_default_budget(ty: CoxeterType) -> bool {
    match ty.family {
        Family::A => ty.rank <= 5,
        Family::B => ty.rank <= 4,
        Family::D => ty.rank == 4,
        Family::I2 => ty.m.is_some_and(|m| m <= 12),
        Family::H3 | Family::F4 => true,
    }
}

pub fn check_budget(ty: CoxeterType, budget: Option<usize>) -> Result<()> {
    let ok = match budget {
        None => within_default_budget(ty),
        Some(b) => match ty.family {
            Family::I2 => ty.m.is_some_and(|m| m as usize <= b),
            Family::H3 | Family::F4 => true,
            _ => ty.rank <= b,
        },
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Resource(format!("{ty} exceeds the verification budget; raise it with --budget")))
    }
}

fn ordering_key(c: &StandardCoxeterElement) -> String {
    let word: Vec<String> = c.ordering.iter().map(|s| (s + 1).to_string()).collect();
    format!("c={}", word.join("."))
}

fn require(ty: CoxeterType, families: &[Family], what: &str) -> Result<()> {
    if families.contains(&ty.family) {
        Ok(())
    } else {
        Err(Error::TypeMismatch(format!("{what} is stated for other types than {ty}")))
    }
}

struct Context {
    braids: BraidGroup,
    coxeters: Vec<StandardCoxeterElement>,
    kl_max_order: usize,
}

impl Context {
    fn group(&self) -> &CoxeterGroup {
        self.braids.group()
    }

    fn duals(&self) -> Result<Vec<DualMonoid>> {
        self.coxeters.iter().map(|c| DualMonoid::new(&self.braids, c)).collect()
    }

    fn kl(&self) -> Result<KlTable> {
        KlTable::with_max_order(&HeckeAlgebra::new(self.braids.group_arc().clone()), self.kl_max_order)
    }

    /// One item per Coxeter element, computed in parallel.
    fn per_coxeter<F>(&self, f: F) -> Result<Vec<ReportItem>>
    where
        F: Fn(&DualMonoid) -> Result<(bool, Value)> + Sync,
    {
        let duals = self.duals()?;
        duals
            .par_iter()
            .map(|d| {
                let (pass, detail) = f(d)?;
                Ok(ReportItem { key: ordering_key(d.coxeter_element()), pass, detail })
            })
            .collect()
    }

    /// One item per `x`, aggregating over all `y`.
    fn per_pair<F>(&self, f: F) -> Result<Vec<ReportItem>>
    where
        F: Fn(CoxeterElement, CoxeterElement) -> Result<bool> + Sync,
    {
        let g = self.group();
        let xs: Vec<CoxeterElement> = g.elements().collect();
        xs.par_iter()
            .map(|&x| {
                let mut failures = Vec::new();
                for y in g.elements() {
                    if !f(x, y)? {
                        failures.push(word_key(g, y));
                    }
                }
                let pass = failures.is_empty();
                let detail = if pass { Value::Null } else { json!({ "failing_y": failures }) };
                Ok(ReportItem { key: format!("x={}", word_key(g, x)), pass, detail })
            })
            .collect()
    }
}

/// Runs one sweep. Budget violations are `Resource` errors; unknown ids and
/// type mismatches are `Parse` and `TypeMismatch` errors.
pub fn verify(name: &str, ty: CoxeterType, opts: &VerifyOptions) -> Result<VerificationReport> {
    let theorem = lookup(name).ok_or_else(|| Error::Parse(format!("unknown theorem id {name:?}")))?;
    check_budget(ty, opts.budget)?;
    let braids = BraidGroup::new(ty)?;
    let g = braids.group();
    let coxeters = match &opts.ordering {
        Some(ordering) => {
            let element = g.element_from_word(ordering)?;
            g.check_coxeter_ordering(element, ordering)?;
            vec![StandardCoxeterElement { element, ordering: ordering.clone() }]
        }
        None => g.standard_coxeter_elements()?,
    };
    let kl_max_order = if opts.budget.is_some() { usize::MAX } else { KL_DEFAULT_MAX_ORDER };
    let cx = Context { braids, coxeters, kl_max_order };
    let mut counts = BTreeMap::new();
    counts.insert("order".to_string(), cx.group().order() as u64);
    counts.insert("reflections".to_string(), cx.group().reflections().len() as u64);
    let mut items = run(theorem, &cx, &mut counts)?;
    items.sort_by(|a, b| a.key.cmp(&b.key));
    counts.insert("items".to_string(), items.len() as u64);
    counts.insert("failed".to_string(), items.iter().filter(|i| !i.pass).count() as u64);
    let pass = items.iter().all(|i| i.pass);
    Ok(VerificationReport {
        command: "verify".into(),
        theorem: theorem.id.into(),
        alias: theorem.alias.into(),
        group: ty.to_string(),
        coxeter_elements: cx.coxeters.iter().map(|c| c.ordering.iter().map(|s| s + 1).collect()).collect(),
        items,
        counts,
        version: env!("CARGO_PKG_VERSION").into(),
        evidence_only: theorem.evidence_only,
        pass,
        timing_ms: None,
    })
}

fn run(theorem: &Theorem, cx: &Context, counts: &mut BTreeMap<String, u64>) -> Result<Vec<ReportItem>> {
    let g = cx.group();
    let b = &cx.braids;
    let ty = g.coxeter_type();
    match theorem.id {
        "prop-3.2" => cx.per_coxeter(|d| {
            let c = d.coxeter_element();
            let mut from_c = g.reflections_from_coxeter(c.element, &c.ordering)?;
            from_c.sort();
            let mut all = g.reflections().to_vec();
            all.sort();
            Ok((from_c == all, json!({ "produced": from_c.len() })))
        }),
        "cor-3.4" => cx.per_coxeter(|d| {
            let c = d.coxeter_element().element;
            let mut failures = Vec::new();
            for &x in d.divisors() {
                let head = d.t_reduced_factorization(x)?;
                let tail = d.t_reduced_factorization(g.mul(g.inverse(x), c))?;
                let product = head.iter().chain(&tail).fold(g.identity(), |acc, &t| g.mul(acc, t));
                let ok = head.len() == g.reflection_length(x) && head.len() + tail.len() == g.rank() && product == c;
                if !ok {
                    failures.push(word_key(g, x));
                }
            }
            Ok((failures.is_empty(), json!({ "divisors": d.divisors().len(), "failing": failures })))
        }),
        "prop-3.5" => cx.per_coxeter(|d| {
            let relations = d.verify_dual_relations();
            let failing: Vec<_> = relations.iter().filter(|r| !r.holds).collect();
            Ok((failing.is_empty(), json!({ "relations": relations.len(), "failing": failing })))
        }),
        "thm-3.7" => cx.per_coxeter(|d| {
            let c = d.coxeter_element();
            let start: Vec<CoxeterElement> = c.ordering.iter().map(|&s| g.generator(s)).collect();
            let orbit = hurwitz_orbit_in_group(g, start);
            let brute: BTreeSet<Vec<CoxeterElement>> =
                reduced_reflection_factorizations(g, c.element).into_iter().collect();
            let braid_start = c.ordering.iter().map(|&s| b.positive(&[s])).collect::<Result<Vec<_>>>()?;
            let braid_orbit = hurwitz_orbit_in_braids(b, braid_start);
            let projected: BTreeSet<Vec<CoxeterElement>> =
                braid_orbit.iter().map(|t| t.iter().map(|x| b.image(x)).collect()).collect();
            let atoms_only = braid_orbit.iter().flatten().all(|x| {
                let t = b.image(x);
                d.atom(t).is_ok_and(|a| a.braid == *x)
            });
            let pass = orbit == brute && projected == orbit && braid_orbit.len() == orbit.len() && atoms_only;
            Ok((
                pass,
                json!({
                    "orbit": orbit.len(),
                    "factorizations": brute.len(),
                    "braid_orbit": braid_orbit.len(),
                    "entries_are_atoms": atoms_only,
                }),
            ))
        }),
        "prop-3.9" => cx.per_coxeter(|d| {
            let atoms = d.atoms();
            let distinct: BTreeSet<_> = atoms.values().map(|a| a.braid.clone()).collect();
            let rational = atoms.values().all(|a| b.is_rational(&a.braid));
            let images = atoms.iter().all(|(&t, a)| b.image(&a.braid) == t);
            let mut pass = atoms.len() == g.reflections().len() && distinct.len() == atoms.len() && rational && images;
            let mut detail = json!({ "atoms": atoms.len(), "rational": rational });
            if ty.family == Family::I2 && d.coxeter_element().ordering == [0, 1] {
                let closed: BTreeSet<_> = dihedral_atoms_closed_form(b)?.into_iter().collect();
                pass &= closed == distinct;
                detail["closed_form_agrees"] = json!(closed == distinct);
            }
            Ok((pass, detail))
        }),
        "prop-4.4" => {
            let fractions = count_distinct_fractions(b) as u64;
            let interval = count_rational_normal_forms(g) as u64;
            counts.insert("distinct_fractions".into(), fractions);
            counts.insert("interval_normal_forms".into(), interval);
            let mut items = cx.per_pair(|x, y| {
                let nf = b.fraction(x, y);
                if !b.is_rational(&nf) || !b.is_rational(&b.inverse(&nf)) {
                    return Ok(false);
                }
                let (fx, fy) = b.fraction_form(&nf)?;
                Ok(g.weak_meet_left(fx, fy) == g.identity() && b.fraction(fx, fy) == nf)
            })?;
            items.push(ReportItem {
                key: "interval".into(),
                pass: fractions == interval,
                detail: json!({ "distinct_fractions": fractions, "interval_normal_forms": interval }),
            });
            Ok(items)
        }
        "lemma-4.5" => cx.per_pair(|x, y| {
            let nf = b.fraction(x, y);
            let w = b.image(&nf);
            let lift = b.signed_lift(&nf, &g.reduced_word(w))?;
            Ok(lift.len() == g.length(w) && b.normal_form(&lift)? == nf)
        }),
        "thm-5.9" => {
            require(ty, &[Family::A], theorem.id)?;
            let m = MikadoA::new(b)?;
            let mut items = cx.per_pair(|x, y| {
                let nf = b.fraction(x, y);
                Ok(b.is_rational(&nf) && m.is_mikado(&nf))
            })?;
            let n = g.rank() as i32;
            let letters: Vec<i32> = (1..=n).flat_map(|i| [i, -i]).collect();
            let mut words: Vec<Vec<i32>> = vec![Vec::new()];
            let mut frontier = words.clone();
            for _ in 0..4 {
                frontier = frontier
                    .iter()
                    .flat_map(|w| letters.iter().map(move |&l| w.iter().copied().chain([l]).collect()))
                    .collect();
                words.extend(frontier.iter().cloned());
            }
            let forms: BTreeSet<_> = words.iter().map(|w| b.normal_form(w)).collect::<Result<_>>()?;
            let outside: Vec<_> = forms.into_iter().filter(|nf| !b.is_rational(nf)).collect();
            let agree = outside.par_iter().filter(|nf| m.is_mikado(nf)).count();
            items.push(ReportItem {
                key: "non-rational-words".into(),
                pass: agree == 0,
                detail: json!({ "checked": outside.len(), "mikado": agree }),
            });
            Ok(items)
        }
        "thm-5.13" => {
            require(ty, &[Family::A], theorem.id)?;
            let m = MikadoA::new(b)?;
            cx.per_coxeter(|d| {
                let mut failing = Vec::new();
                for &x in d.divisors() {
                    let nf = d.embed_simple(x)?;
                    if b.image(&nf) != x || !b.is_rational(&nf) || !m.is_mikado(&nf) {
                        failing.push(word_key(g, x));
                    }
                }
                Ok((failing.is_empty(), json!({ "divisors": d.divisors().len(), "failing": failing })))
            })
        }
        "prop-5.14" => {
            require(ty, &[Family::A], theorem.id)?;
            cx.per_coxeter(|d| {
                let witnesses = d.bruhat_fraction_check()?;
                let failing: Vec<_> = witnesses.iter().filter(|w| !w.holds).collect();
                let non_coprime = witnesses.iter().filter(|w| !w.coprime).count();
                Ok((
                    failing.is_empty(),
                    json!({ "divisors": witnesses.len(), "non_coprime_witnesses": non_coprime, "failing": failing }),
                ))
            })
        }
        "thm-6.4" => {
            require(ty, &[Family::B], theorem.id)?;
            let n = g.rank();
            let a = BraidGroup::new(CoxeterType::a(2 * n - 1)?)?;
            let m = MikadoA::new(&a)?;
            cx.per_pair(|x, y| {
                let nf = b.fraction(x, y);
                let image = a.normal_form(&type_b_letters_to_a(n, &b.to_letters(&nf)))?;
                let fixed = m.is_mikado_b(&image)?;
                let pairs = m.is_mikado_b_by_pairs(&image)?;
                Ok(b.is_rational(&nf) && fixed && pairs)
            })
        }
        "thm-6.9" => {
            require(ty, &[Family::B], theorem.id)?;
            let n = g.rank();
            let a = BraidGroup::new(CoxeterType::a(2 * n - 1)?)?;
            let m = MikadoA::new(&a)?;
            cx.per_coxeter(|d| {
                let mut failing = Vec::new();
                for &x in d.divisors() {
                    let nf = d.embed_simple(x)?;
                    let image = a.normal_form(&type_b_letters_to_a(n, &b.to_letters(&nf)))?;
                    let ok = b.image(&nf) == x
                        && b.is_rational(&nf)
                        && m.is_mikado_b(&image)?
                        && m.is_mikado_b_by_pairs(&image)?;
                    if !ok {
                        failing.push(word_key(g, x));
                    }
                }
                Ok((failing.is_empty(), json!({ "divisors": d.divisors().len(), "failing": failing })))
            })
        }
        "thm-7.1" => cx.per_coxeter(|d| {
            let mut failing = Vec::new();
            for &x in d.divisors() {
                let nf = d.embed_simple(x)?;
                if b.image(&nf) != x || !b.is_rational(&nf) {
                    failing.push(word_key(g, x));
                }
            }
            Ok((failing.is_empty(), json!({ "divisors": d.divisors().len(), "failing": failing })))
        }),
        "thm-8.2" => {
            let kl = cx.kl()?;
            let failures = kl.quotient_positivity_failures()?;
            counts.insert("pairs".into(), (g.order() * g.order()) as u64);
            let failing: Vec<(String, String)> =
                failures.iter().map(|&(x, y)| (word_key(g, x), word_key(g, y))).collect();
            Ok(vec![ReportItem {
                key: "pairs".into(),
                pass: failing.is_empty(),
                detail: json!({ "failing": failing }),
            }])
        }
        "thm-8.5" => {
            let kl = cx.kl()?;
            cx.per_coxeter(|d| {
                let report = kl.positivity_report(d)?;
                let failing: Vec<_> = report.iter().filter(|i| !i.positive).collect();
                Ok((failing.is_empty(), json!({ "divisors": report.len(), "failing": failing })))
            })
        }
        "conj-8.6" => {
            let kl = cx.kl()?;
            cx.per_coxeter(|d| {
                let report = kl.positivity_report(d)?;
                let positive = report.iter().filter(|i| i.positive).count();
                let mut rational = 0;
                let mut consistent = true;
                let embeds: BTreeMap<CoxeterElement, _> =
                    d.divisors().iter().map(|&x| Ok((x, d.embed_simple(x)?))).collect::<Result<_>>()?;
                let mut per_divisor = BTreeMap::new();
                for (&x, nf) in &embeds {
                    let is_rational = b.is_rational(nf);
                    rational += usize::from(is_rational);
                    consistent &= b.image(nf) == x;
                    per_divisor.insert(word_key(g, x), is_rational);
                }
                for (&x, nx) in &embeds {
                    for (&y, ny) in &embeds {
                        if g.abs_divides(x, y) {
                            let rest = &embeds[&g.mul(g.inverse(x), y)];
                            consistent &= b.mul(nx, rest) == *ny;
                        }
                    }
                }
                let pass = consistent && rational == embeds.len() && positive == report.len();
                Ok((
                    pass,
                    json!({
                        "divisors": embeds.len(),
                        "rational": rational,
                        "kl_positive": positive,
                        "internally_consistent": consistent,
                        "rational_by_divisor": per_divisor,
                    }),
                ))
            })
        }
        "thm-8.11" => {
            require(ty, &[Family::A], theorem.id)?;
            let kl = cx.kl()?;
            let tl = TemperleyLieb::new(cx.braids.group_arc().clone())?;
            let failing: Vec<String> = fg_projection_failures(&tl, &kl)?.into_iter().map(|w| word_key(g, w)).collect();
            counts.insert("fully_commutative".into(), tl.dimension() as u64);
            Ok(vec![ReportItem {
                key: "projection".into(),
                pass: failing.is_empty(),
                detail: json!({ "elements": g.order(), "failing": failing }),
            }])
        }
        "thm-8.13" => {
            require(ty, &[Family::A], theorem.id)?;
            let tl = TemperleyLieb::new(cx.braids.group_arc().clone())?;
            counts.insert("fully_commutative".into(), tl.dimension() as u64);
            cx.per_coxeter(|d| {
                let report = triangularity_check(&zinno_matrix(&tl, d)?, g);
                Ok((report.pass, serde_json::to_value(&report).unwrap_or(Value::Null)))
            })
        }
        "thm-8.17" => {
            require(ty, &[Family::A], theorem.id)?;
            let tl = TemperleyLieb::new(cx.braids.group_arc().clone())?;
            cx.per_coxeter(|d| {
                let report = positivity_tl_report(&tl, d)?;
                let failing: Vec<_> = report.iter().filter(|i| !i.positive).collect();
                Ok((failing.is_empty(), json!({ "divisors": report.len(), "failing": failing })))
            })
        }
        "kl-checks" => {
            let kl = cx.kl()?;
            let names = |v: Vec<CoxeterElement>| -> Vec<String> { v.into_iter().map(|w| word_key(g, w)).collect() };
            let checks = [
                ("bar-invariance", names(kl.bar_invariance_failures())),
                ("sign-twist", names(kl.sign_twist_failures())),
                ("unitriangularity", names(kl.unitriangularity_failures())),
                (
                    "degree-bounds",
                    kl.degree_bound_failures().into_iter().map(|(y, w)| format!("{}<{}", word_key(g, y), word_key(g, w))).collect(),
                ),
                ("multiplication-rule", names(kl.multiplication_rule_failures())),
            ];
            Ok(checks
                .into_iter()
                .map(|(key, failing)| ReportItem {
                    key: key.into(),
                    pass: failing.is_empty(),
                    detail: if failing.is_empty() { Value::Null } else { json!({ "failing": failing }) },
                })
                .collect())
        }
        other => Err(Error::Integrity(format!("no sweep registered for {other}"))),
    }
}
