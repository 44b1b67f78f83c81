//! Acceptance gate: ten criteria, each with a time limit. Prints one line
//! per criterion and exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use siegel_kr::admissible::{enumerate_adm, is_admissible};
use siegel_kr::alcove::{element_to_alcove, w_rho};
use siegel_kr::finite::{eo_dimension, eo_prank, eo_supersingular, final_to_nu};
use siegel_kr::prank0::{
    csz_counts, enumerate_adm0, lemma84_check, lemma85_gap, length_formula, max_length_formula, maximal_prank0,
    sigma_admissible_vectors, SgPermutation,
};
use siegel_kr::strata::{max_superspecial, strata_table, supersingular_dim_bounds, superspecial_elements};
use siegel_kr::verify::kr_candidates;
use siegel_kr::{AffineElement, SignedPermutation, TranslationVector};

type Check = Result<String, String>;

/// `(name, check, time limit in seconds)`.
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn adm_count() -> Check {
    let poset = enumerate_adm(2).map_err(|e| e.to_string())?;
    ensure(poset.len() == 13, || format!("|Adm| = {}", poset.len()))?;
    // independent route: scan the candidate box for permissible alcoves
    let permissible = kr_candidates(2).iter().filter(|x| element_to_alcove(x).is_permissible()).count();
    ensure(permissible == 13, || format!("{permissible} permissible alcoves"))?;
    Ok("13 elements, 13 permissible alcoves".into())
}

/// `(word of xτ⁻¹, p-rank)` as printed for `g = 2`.
const G2_TABLE: [(&[usize], usize); 13] = [
    (&[], 0),
    (&[1], 0),
    (&[0], 0),
    (&[2], 0),
    (&[0, 2], 0),
    (&[0, 1], 1),
    (&[2, 1], 1),
    (&[1, 0], 1),
    (&[1, 2], 1),
    (&[1, 2, 0], 2),
    (&[0, 1, 0], 2),
    (&[2, 1, 2], 2),
    (&[0, 2, 1], 2),
];

fn g2_table() -> Check {
    let from = |w: &[usize]| AffineElement::from_word(w, 1, 2).unwrap();
    let expected: BTreeSet<(AffineElement, usize)> = G2_TABLE.iter().map(|(w, p)| (from(w), *p)).collect();
    let rows = strata_table(2).map_err(|e| e.to_string())?;
    let computed: BTreeSet<(AffineElement, usize)> = rows.iter().map(|r| (r.x.clone(), r.p_rank)).collect();
    ensure(rows.len() == 13 && computed == expected, || "table mismatch".into())?;
    for r in &rows {
        let support: BTreeSet<usize> = r.support.iter().copied().collect();
        let paper = G2_TABLE.iter().find(|(w, _)| from(w) == r.x).unwrap();
        let letters: BTreeSet<usize> = paper.0.iter().copied().collect();
        ensure(support == letters, || format!("support of {} is {support:?}", r.word))?;
    }
    let ssp: BTreeSet<AffineElement> = rows.iter().filter(|r| r.superspecial).map(|r| r.x.clone()).collect();
    let expected_ssp: BTreeSet<AffineElement> = [&[][..], &[1], &[0], &[2], &[0, 2]].iter().map(|w| from(w)).collect();
    ensure(ssp == expected_ssp, || format!("superspecial set {ssp:?}"))?;
    Ok("13 rows and 5 superspecial strata match".into())
}

fn length_formula_oracle() -> Check {
    let mut n = 0;
    for g in 1..=5 {
        for s in SgPermutation::all(g) {
            let im = maximal_prank0(&s).length() as i64;
            ensure(length_formula(&s) == im, || format!("σ = {s}: formula {} vs {im}", length_formula(&s)))?;
            n += 1;
        }
    }
    Ok(format!("{n} permutations"))
}

fn dimension_theorem() -> Check {
    for g in 1..=4 {
        let best = enumerate_adm0(g, 5).map_err(|e| e.to_string())?.iter().map(AffineElement::length).max();
        ensure(best == Some(g * g / 2), || format!("g = {g}: max over Adm⁽⁰⁾ is {best:?}"))?;
    }
    for g in 1..=9 {
        let (best, arg) = max_length_formula(g).map_err(|e| e.to_string())?;
        ensure(best == (g * g / 2) as i64, || format!("g = {g}: max formula {best} at {arg}"))?;
    }
    Ok("enumeration g ≤ 4, closed form g ≤ 9".into())
}

fn gap_and_csz() -> Check {
    let mut n = 0;
    for g in 1..=7 {
        for s in SgPermutation::all(g) {
            ensure(lemma85_gap(&s) >= 0, || format!("gap < 0 at {s}"))?;
            let (c1, c2, c3, c4) = csz_counts(&s);
            ensure(c1 == c2 && c3 == c4, || format!("{s}: ({c1},{c2},{c3},{c4})"))?;
            n += 1;
        }
    }
    Ok(format!("{n} permutations"))
}

fn monotonicity() -> Check {
    let mut n = 0;
    for g in 1..=4 {
        for s in SgPermutation::all(g) {
            let vectors = sigma_admissible_vectors(&s);
            for v in &vectors {
                for v_prime in vectors.iter().filter(|u| u.componentwise_le(v)) {
                    let ok = lemma84_check(&s, v, v_prime).map_err(|e| e.to_string())?;
                    ensure(ok, || format!("σ = {s}, v = {v:?}, v′ = {v_prime:?}"))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} comparable pairs"))
}

fn alcove_roundtrip() -> Check {
    let mut n = 0;
    for g in 1..=3 {
        for x in enumerate_adm(g).map_err(|e| e.to_string())?.elements {
            let t = element_to_alcove(&x).truncate();
            let rec = t.recover().map_err(|e| format!("{x}: {e}"))?;
            let (w, rho) = x.decompose_right();
            ensure(rec.lambda == *x.lambda() && rec.rho == rho && rec.w == w, || format!("recover({x})"))?;
            let v = t.flag_position().map_err(|e| format!("{x}: {e}"))?;
            let expected = &w * &w_rho(&rho).map_err(|e| e.to_string())?;
            ensure(v == expected, || format!("flag position of {x} is {v}, expected {expected}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} admissible elements"))
}

fn kr_equivalence() -> Check {
    let mut n = 0;
    for g in 1..=3 {
        for x in kr_candidates(g) {
            ensure(is_admissible(&x) == element_to_alcove(&x).is_permissible(), || format!("disagree on {x}"))?;
            n += 1;
        }
    }
    let finite = SignedPermutation::all_elements(4);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let mut hits = 0;
    for _ in 0..10_000 {
        // half the draws from the {0,1}-box with c = 1, where Adm(μ) lives
        let near = rng.gen_bool(0.5);
        let c = if near { 1 } else { rng.gen_range(0..=2) };
        let mut lambda = vec![0; 8];
        for i in 0..4 {
            lambda[i] = if near { rng.gen_range(0..=1) } else { rng.gen_range(-1..=2) };
            lambda[7 - i] = c - lambda[i];
        }
        let w = finite[rng.gen_range(0..finite.len())].clone();
        let x = AffineElement::new(TranslationVector::new(lambda).unwrap(), w).unwrap();
        let adm = is_admissible(&x);
        hits += usize::from(adm);
        ensure(adm == element_to_alcove(&x).is_permissible(), || format!("disagree on {x}"))?;
    }
    Ok(format!("{n} exhaustive (g ≤ 3), 10000 sampled at g = 4 ({hits} admissible)"))
}

fn superspecial_maximum() -> Check {
    let mut bounds = Vec::new();
    for g in 1..=6 {
        let expected = if g % 2 == 0 { g * g / 2 } else { g * (g - 1) / 2 };
        let elements = superspecial_elements(g).map_err(|e| e.to_string())?;
        let best = elements.iter().map(AffineElement::length).max().unwrap_or(0);
        let maximizers: Vec<&AffineElement> = elements.iter().filter(|x| x.length() == best).collect();
        ensure(best == expected, || format!("g = {g}: max {best}, expected {expected}"))?;
        ensure(maximizers.len() == 1, || format!("g = {g}: {} maximizers", maximizers.len()))?;
        let (x, dim) = max_superspecial(g).map_err(|e| e.to_string())?;
        ensure(*maximizers[0] == x && dim == expected, || format!("g = {g}: max_superspecial gives {x}"))?;
        let (lo, hi) = supersingular_dim_bounds(g);
        let want = if g % 2 == 0 { (g * g / 2, g * g / 2) } else { (g * (g - 1) / 2, (g * g - 1) / 2) };
        ensure((lo, hi) == want, || format!("g = {g}: S_I bounds ({lo},{hi})"))?;
        bounds.push(format!("g={g}: ({lo},{hi})"));
    }
    Ok(format!("unique maxima; S_I bounds {}", bounds.join(" ")))
}

fn eo_suite() -> Check {
    for g in 1..=7 {
        let finals = SignedPermutation::enumerate_final(g);
        ensure(finals.len() == 1 << g, || format!("g = {g}: {} final elements", finals.len()))?;
        // oracle: filter the whole group
        let scanned = SignedPermutation::all_elements(g).into_iter().filter(|w| w.is_final()).count();
        ensure(scanned == finals.len(), || format!("g = {g}: scan finds {scanned}"))?;
        for w in &finals {
            let nu_sum = final_to_nu(w).map_err(|e| e.to_string())?.sum() as usize;
            let dim = eo_dimension(w).map_err(|e| e.to_string())?;
            ensure(dim == w.length() && nu_sum == dim, || format!("{w}: dim {dim}, Σν {nu_sum}"))?;
        }
        let top = eo_prank(&SignedPermutation::longest_final(g)).map_err(|e| e.to_string())?;
        ensure(top == g, || format!("g = {g}: p-rank of w_∅ is {top}"))?;
        for len in 0..=1 {
            let count = finals.iter().filter(|w| w.length() == len).count();
            ensure(count == 1, || format!("g = {g}: {count} final elements of length {len}"))?;
        }
    }
    let ss: BTreeSet<SignedPermutation> =
        SignedPermutation::enumerate_final(2).into_iter().filter(|w| eo_supersingular(w).unwrap()).collect();
    let expected =
        BTreeSet::from([SignedPermutation::identity(2), SignedPermutation::simple_reflection(2, 2).unwrap()]);
    ensure(ss == expected, || format!("supersingular final elements {ss:?}"))?;
    Ok("g ≤ 7".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("|Adm(μ)| = 13 for g = 2", adm_count, 1),
        ("g = 2 stratum table and superspecial set", g2_table, 1),
        ("length formula vs Iwahori-Matsumoto length, g ≤ 5", length_formula_oracle, 30),
        ("dim of the p-rank 0 locus is ⌊g²/2⌋", dimension_theorem, 120),
        ("gap inequality and CSZ identities, g ≤ 7", gap_and_csz, 60),
        ("monotonicity of lifts, g ≤ 4", monotonicity, 120),
        ("truncated alcove round trip and flag position, g ≤ 3", alcove_roundtrip, 30),
        ("Bruhat-admissible iff permissible", kr_equivalence, 60),
        ("unique superspecial maximum, g ≤ 6", superspecial_maximum, 60),
        ("EO invariants, g ≤ 7", eo_suite, 10),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit} s"))
            }
            other => other,
        };
        match result {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} [{elapsed:.2?}] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} [{elapsed:.2?}] {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
