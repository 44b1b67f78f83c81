//! Named property suites with JSON reports.
//!
//! Every suite checks all ranks `1..=g` and records up to
//! [`MAX_COUNTEREXAMPLES`] failing inputs.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::admissible::{coatoms, enumerate_adm_bounded, is_admissible, w_tau_slice};
use crate::affine::{bruhat_leq, tau, AffineElement, TranslationVector};
use crate::alcove::{element_to_alcove, w_rho};
use crate::error::{Error, Result};
use crate::finite::{eo_dimension, eo_prank, eo_supersingular, final_to_nu, SignedPermutation};
use crate::prank0::{
    csz_counts, embed, enumerate_adm0, fixed_point_free_elements, lemma84_check, lemma85_gap, length_formula,
    lift_to_adm0, max_length_formula, maximal_prank0, project, sigma_admissible_vectors, SgPermutation,
    MAX_FIXED_POINT_FREE_G, MAX_SWEEP_G,
};
use crate::strata::{max_superspecial, non_superspecial_criterion, strata_table_bounded, superspecial_elements};

pub const MAX_COUNTEREXAMPLES: usize = 10;

/// `(name, alias, description)`.
pub const SUITES: [(&str, Option<&str>, &str); 14] = [
    ("eo", None, "final elements, elementary sequences and EO invariants"),
    ("admissible", None, "Adm(μ) is graded, downward closed, with 2^g maxima"),
    ("kr-equivalence", None, "Bruhat-admissible iff permissible on all candidates"),
    ("alcove-roundtrip", None, "truncated alcoves recover λ, ρ, w and the flag position"),
    ("w-tau-slice", None, "Wτ ∩ Adm(μ) is the interval below t^μ"),
    ("strata", None, "p-rank, support and superspecial tests agree"),
    ("bijection", None, "lift and projection between Adm(μ)⁽⁰⁾ and W⁽⁰⁾"),
    ("monotonicity", None, "lifts decrease as the sign vector grows"),
    ("fiber-maximum", None, "maximal_prank0(σ) is the maximum over σ"),
    ("gap", None, "inversions - 2(A_σ + A_σ⁻¹) ≥ (g - fix)/2"),
    ("csz", Some("lemma86"), "c1 = c2 and c3 = c4"),
    ("length-formula", None, "closed form equals the length of maximal_prank0"),
    ("dimension", None, "max length on Adm(μ)⁽⁰⁾ is ⌊g²/2⌋"),
    ("superspecial", None, "unique superspecial maximum of dimension g²/2 or g(g-1)/2"),
];

pub fn resolve_suite(name: &str) -> Option<&'static str> {
    if name == "all" {
        return Some("all");
    }
    SUITES.iter().find(|(n, a, _)| *n == name || *a == Some(name)).map(|(n, _, _)| *n)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub g: usize,
    pub passed: bool,
    pub checked: usize,
    pub counterexamples: Vec<Value>,
}

struct Tally {
    checked: usize,
    failures: Vec<Value>,
}

impl Tally {
    fn new() -> Self {
        Self { checked: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, payload: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok && self.failures.len() < MAX_COUNTEREXAMPLES {
            self.failures.push(payload());
        }
    }

    /// Merges per-item `(ok, payload)` results computed in parallel, in order.
    fn extend(&mut self, results: Vec<(bool, Value)>) {
        for (ok, payload) in results {
            self.check(ok, || payload);
        }
    }

    fn report(self, suite: &str, g: usize) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            g,
            passed: self.failures.is_empty(),
            checked: self.checked,
            counterexamples: self.failures,
        }
    }
}

fn bounded(g: usize, bound: usize) -> Result<()> {
    if g == 0 {
        return Err(Error::ZeroRank);
    }
    if g > bound {
        return Err(Error::BoundExceeded { g, bound });
    }
    Ok(())
}

/// Runs `suite` (a name or alias) for ranks `1..=g`. `max_g` bounds
/// enumerations of `Adm(μ)`.
pub fn run_suite(suite: &str, g: usize, max_g: usize) -> Result<Vec<SuiteReport>> {
    let name = resolve_suite(suite).ok_or_else(|| Error::Unsupported(format!("unknown suite '{suite}'")))?;
    if name == "all" {
        return SUITES.iter().map(|(n, _, _)| run_one(n, g, max_g)).collect();
    }
    Ok(vec![run_one(name, g, max_g)?])
}

fn run_one(name: &str, g: usize, max_g: usize) -> Result<SuiteReport> {
    let mut t = Tally::new();
    match name {
        "eo" => eo(&mut t, g)?,
        "admissible" => admissible(&mut t, g, max_g)?,
        "kr-equivalence" => kr_equivalence(&mut t, g, max_g)?,
        "alcove-roundtrip" => alcove_roundtrip(&mut t, g, max_g)?,
        "w-tau-slice" => slice(&mut t, g, max_g)?,
        "strata" => strata(&mut t, g, max_g)?,
        "bijection" => bijection(&mut t, g, max_g)?,
        "monotonicity" => monotonicity(&mut t, g)?,
        "fiber-maximum" => fiber_maximum(&mut t, g)?,
        "gap" => sweep(&mut t, g, |s| lemma85_gap(s) >= 0)?,
        "csz" => sweep(&mut t, g, |s| {
            let (c1, c2, c3, c4) = csz_counts(s);
            c1 == c2 && c3 == c4
        })?,
        "length-formula" => {
            sweep(&mut t, g.min(MAX_SWEEP_G), |s| length_formula(s) == maximal_prank0(s).length() as i64)?
        }
        "dimension" => dimension(&mut t, g, max_g)?,
        "superspecial" => superspecial(&mut t, g)?,
        _ => return Err(Error::Internal(format!("suite {name} has no runner"))),
    }
    Ok(t.report(name, g))
}

fn eo(t: &mut Tally, g: usize) -> Result<()> {
    bounded(g, 10)?;
    for r in 1..=g {
        let finals = SignedPermutation::enumerate_final(r);
        t.check(finals.len() == 1 << r, || json!({"g": r, "final_count": finals.len()}));
        for w in &finals {
            let nu = final_to_nu(w)?;
            let ok = eo_dimension(w)? == w.length() && nu.sum() as usize == w.length();
            t.check(ok, || json!({"g": r, "w": w.to_string()}));
        }
        let w_empty = SignedPermutation::longest_final(r);
        t.check(eo_prank(&w_empty)? == r, || json!({"g": r, "w_empty_prank": r}));
        for len in 0..=1 {
            let count = finals.iter().filter(|w| w.length() == len).count();
            t.check(count == 1, || json!({"g": r, "length": len, "count": count}));
        }
        if r == 2 {
            let ss: Vec<String> =
                finals.iter().filter(|w| eo_supersingular(w).unwrap_or(false)).map(ToString::to_string).collect();
            let expected = vec![
                SignedPermutation::identity(2).to_string(),
                SignedPermutation::simple_reflection(2, 2)?.to_string(),
            ];
            t.check(ss == expected, || json!({"g": 2, "supersingular": ss}));
        }
    }
    Ok(())
}

fn admissible(t: &mut Tally, g: usize, max_g: usize) -> Result<()> {
    for r in 1..=g {
        let poset = enumerate_adm_bounded(r, max_g)?;
        let maxima = poset.maximal_indices();
        t.check(maxima.len() == 1 << r, || json!({"g": r, "maxima": maxima.len()}));
        let top = r * (r + 1) / 2;
        t.check(maxima.iter().all(|&i| poset.lengths[i] == top), || json!({"g": r, "maximal_lengths": "wrong"}));
        let results: Vec<(bool, Value)> = poset
            .elements
            .par_iter()
            .map(|x| {
                let ok = x.omega_power() == 1
                    && is_admissible(x)
                    && coatoms(x).map(|c| c.iter().all(|z| poset.contains(z))).unwrap_or(false)
                    && bruhat_leq(x, &AffineElement::translation(x.decompose_right().1));
                (ok, json!({"g": r, "x": x.to_string()}))
            })
            .collect();
        t.extend(results);
    }
    Ok(())
}

/// Elements `t^λ w` with `λ(i) ∈ {-1, ..., 2}` for `i ≤ g` and similitude in `{0, 1, 2}`.
pub fn kr_candidates(g: usize) -> Vec<AffineElement> {
    let n = 2 * g;
    let finite = SignedPermutation::all_elements(g);
    let mut out = Vec::new();
    for c in 0..=2 {
        for code in 0..4usize.pow(g as u32) {
            let mut lambda = vec![0; n];
            for i in 0..g {
                lambda[i] = (code / 4usize.pow(i as u32) % 4) as i32 - 1;
                lambda[n - 1 - i] = c - lambda[i];
            }
            let lambda = TranslationVector::new(lambda).expect("constant pair sums");
            for w in &finite {
                out.push(AffineElement::new(lambda.clone(), w.clone()).expect("same rank"));
            }
        }
    }
    out
}

/// Compares the Bruhat test with the alcove test on one element.
pub fn kr_agree(x: &AffineElement) -> bool {
    is_admissible(x) == element_to_alcove(x).is_permissible()
}

fn kr_equivalence(t: &mut Tally, g: usize, max_g: usize) -> Result<()> {
    bounded(g, max_g.min(4))?;
    for r in 1..=g {
        let candidates = kr_candidates(r);
        let results: Vec<(bool, Value)> =
            candidates.par_iter().map(|x| (kr_agree(x), json!({"g": r, "x": x.to_string()}))).collect();
        t.extend(results);
        let count = candidates.iter().filter(|x| is_admissible(x)).count();
        let expected = enumerate_adm_bounded(r, max_g)?.len();
        t.check(count == expected, || json!({"g": r, "admissible_candidates": count, "adm": expected}));
    }
    Ok(())
}

/// `recover ∘ truncate ∘ element_to_alcove` and the flag position `w·w_ρ`.
pub fn alcove_roundtrip_holds(x: &AffineElement) -> bool {
    let truncated = element_to_alcove(x).truncate();
    let (w, rho) = x.decompose_right();
    let Ok(rec) = truncated.recover() else { return false };
    let Ok(v) = truncated.flag_position() else { return false };
    let Ok(w_r) = w_rho(&rho) else { return false };
    rec.lambda == *x.lambda() && rec.rho == rho && rec.w == w && v == &w * &w_r
}

fn alcove_roundtrip(t: &mut Tally, g: usize, max_g: usize) -> Result<()> {
    for r in 1..=g {
        let poset = enumerate_adm_bounded(r, max_g)?;
        let results = poset
            .elements
            .par_iter()
            .map(|x| (alcove_roundtrip_holds(x), json!({"g": r, "x": x.to_string()})))
            .collect();
        t.extend(results);
    }
    Ok(())
}

fn slice(t: &mut Tally, g: usize, max_g: usize) -> Result<()> {
    for r in 1..=g {
        bounded(r, max_g)?;
        let t_mu = AffineElement::translation(TranslationVector::mu(r));
        let below: Vec<AffineElement> =
            enumerate_adm_bounded(r, max_g)?.elements.into_iter().filter(|x| bruhat_leq(x, &t_mu)).collect();
        let slice = w_tau_slice(r)?;
        t.check(slice == below, || json!({"g": r, "slice": slice.len(), "below_t_mu": below.len()}));
    }
    Ok(())
}

fn strata(t: &mut Tally, g: usize, max_g: usize) -> Result<()> {
    for r in 1..=g {
        for rec in strata_table_bounded(r, max_g)? {
            let ok = (!rec.superspecial || rec.p_rank == 0)
                && non_superspecial_criterion(&rec.x)? != rec.superspecial
                && rec.dim == rec.x.length();
            t.check(ok, || json!({"g": r, "x": rec.x.to_string()}));
        }
        for w in SignedPermutation::enumerate_final(r) {
            let x = &AffineElement::finite(w.clone()) * &tau(r);
            let ok = is_admissible(&x) && x.w().fixed_points_in_first_half() == eo_prank(&w)?;
            t.check(ok, || json!({"g": r, "w": w.to_string()}));
        }
    }
    Ok(())
}

fn bijection(t: &mut Tally, g: usize, max_g: usize) -> Result<()> {
    for r in 1..=g {
        bounded(r, MAX_FIXED_POINT_FREE_G)?;
        let adm0 = enumerate_adm0(r, max_g)?;
        let mut projected: Vec<SignedPermutation> = adm0.iter().map(project).collect::<Result<_>>()?;
        projected.sort();
        let free = fixed_point_free_elements(r)?;
        t.check(projected == free, || json!({"g": r, "adm0": adm0.len(), "fixed_point_free": free.len()}));
        for x in &adm0 {
            let ok = lift_to_adm0(x.w()).map(|y| y == *x).unwrap_or(false);
            t.check(ok, || json!({"g": r, "x": x.to_string()}));
        }
    }
    Ok(())
}

fn monotonicity(t: &mut Tally, g: usize) -> Result<()> {
    bounded(g, MAX_FIXED_POINT_FREE_G)?;
    for r in 1..=g {
        let results: Vec<(bool, Value)> = SgPermutation::all(r)
            .par_iter()
            .flat_map_iter(|s| {
                let vectors = sigma_admissible_vectors(s);
                let mut out = Vec::new();
                for v in &vectors {
                    for v_prime in vectors.iter().filter(|u| u.componentwise_le(v)) {
                        let ok = lemma84_check(s, v, v_prime).unwrap_or(false);
                        out.push((ok, json!({"sigma": s.to_string(), "v": v.bits(), "v_prime": v_prime.bits()})));
                    }
                }
                out
            })
            .collect();
        t.extend(results);
    }
    Ok(())
}

fn fiber_maximum(t: &mut Tally, g: usize) -> Result<()> {
    bounded(g, MAX_FIXED_POINT_FREE_G)?;
    for r in 1..=g {
        let results: Vec<(bool, Value)> = SgPermutation::all(r)
            .par_iter()
            .map(|s| {
                let top = maximal_prank0(s);
                let ok = sigma_admissible_vectors(s).iter().all(|v| {
                    let x = lift_to_adm0(&embed(v, s).expect("same rank")).expect("fixed-point free");
                    bruhat_leq(&x, &top) && (x == top || !bruhat_leq(&top, &x))
                });
                (ok, json!({"sigma": s.to_string()}))
            })
            .collect();
        t.extend(results);
    }
    Ok(())
}

fn sweep(t: &mut Tally, g: usize, property: impl Fn(&SgPermutation) -> bool + Sync) -> Result<()> {
    bounded(g, MAX_SWEEP_G)?;
    for r in 1..=g {
        let results: Vec<(bool, Value)> =
            SgPermutation::all(r).par_iter().map(|s| (property(s), json!({"sigma": s.to_string()}))).collect();
        t.extend(results);
    }
    Ok(())
}

fn dimension(t: &mut Tally, g: usize, max_g: usize) -> Result<()> {
    bounded(g, MAX_SWEEP_G)?;
    for r in 1..=g {
        let expected = (r * r / 2) as i64;
        let (best, arg) = max_length_formula(r)?;
        t.check(best == expected, || json!({"g": r, "max_length_formula": best, "argmax": arg.to_string()}));
        if r <= max_g.min(4) {
            let enumerated = enumerate_adm0(r, max_g)?.iter().map(AffineElement::length).max().unwrap_or(0) as i64;
            t.check(enumerated == expected, || json!({"g": r, "max_length_adm0": enumerated}));
        }
    }
    Ok(())
}

fn superspecial(t: &mut Tally, g: usize) -> Result<()> {
    bounded(g, 6)?;
    for r in 1..=g {
        let expected = if r % 2 == 0 { r * r / 2 } else { r * (r - 1) / 2 };
        let elements = superspecial_elements(r)?;
        let best = elements.iter().map(AffineElement::length).max().unwrap_or(0);
        let maximizers: Vec<&AffineElement> = elements.iter().filter(|x| x.length() == best).collect();
        let (candidate, dim) = max_superspecial(r)?;
        let ok = best == expected && maximizers.len() == 1 && *maximizers[0] == candidate && dim == expected;
        t.check(ok, || {
            json!({"g": r, "max": best, "expected": expected, "maximizers": maximizers.len(), "candidate": candidate.to_string()})
        });
    }
    Ok(())
}
