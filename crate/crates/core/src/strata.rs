//! Invariants of the KR strata `A_x`, `x ∈ Adm(μ)`.
//!
//! A stratum has dimension `ℓ(x)`. Its p-rank counts the fixed points of the
//! finite part of `x` in `{1, ..., g}`. It is superspecial iff `x` lies in
//! `W_{{i, g-i}}τ` for some `i`, which only depends on the support of `xτ⁻¹`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::admissible::{closure_below, enumerate_adm_bounded, is_admissible, DEFAULT_MAX_G};
use crate::affine::{longest_affine_parabolic, parabolic_elements, tau, AffineElement, DescentOrder, ReducedWord};
use crate::error::{Error, Result};
use crate::finite::SignedPermutation;

fn require_admissible(x: &AffineElement) -> Result<()> {
    if is_admissible(x) {
        Ok(())
    } else {
        Err(Error::NotAdmissible(x.to_string()))
    }
}

/// `#{i ≤ g : w(i) = i}` for `x = t^λ w`.
pub fn prank(x: &AffineElement) -> Result<usize> {
    require_admissible(x)?;
    Ok(x.w().fixed_points_in_first_half())
}

fn support_unchecked(x: &AffineElement) -> Result<BTreeSet<usize>> {
    let u = x * &tau(x.g()).inverse();
    let word = u.reduced_word()?;
    let letters: BTreeSet<usize> = word.letters.iter().copied().collect();
    debug_assert_eq!(
        letters,
        u.reduced_word_with(DescentOrder::Largest)?.letters.into_iter().collect(),
        "support depends on the reduced word of {x}"
    );
    Ok(letters)
}

/// Indices `i` with `s_i ≤ xτ⁻¹`, i.e. the letters of any reduced word of `xτ⁻¹`.
pub fn support(x: &AffineElement) -> Result<BTreeSet<usize>> {
    require_admissible(x)?;
    support_unchecked(x)
}

fn misses_a_pair(g: usize, support: &BTreeSet<usize>) -> bool {
    (0..=g / 2).any(|i| !support.contains(&i) && !support.contains(&(g - i)))
}

pub fn is_superspecial(x: &AffineElement) -> Result<bool> {
    Ok(misses_a_pair(x.g(), &support(x)?))
}

/// For every `i = 0..=⌊g/2⌋` the support contains `s_i` or `s_{g-i}`.
pub fn non_superspecial_criterion(x: &AffineElement) -> Result<bool> {
    let g = x.g();
    let s = support(x)?;
    Ok((0..=g / 2).all(|i| s.contains(&i) || s.contains(&(g - i))))
}

/// The superspecial element of maximal length and that length.
pub fn max_superspecial(g: usize) -> Result<(AffineElement, usize)> {
    let excluded = if g.is_multiple_of(2) { vec![g / 2] } else { vec![0, g] };
    let w = longest_affine_parabolic(&excluded, g)?;
    let x = &w * &tau(g);
    let dim = x.length();
    Ok((x, dim))
}

/// `⋃_i W_{{i,g-i}}τ ∩ Adm(μ)`, canonically ordered. Does not need `Adm(μ)`.
pub fn superspecial_elements(g: usize) -> Result<Vec<AffineElement>> {
    if g == 0 {
        return Err(Error::ZeroRank);
    }
    let t = tau(g);
    let mut all = BTreeSet::new();
    for i in 0..=g / 2 {
        let generators: Vec<usize> = (0..=g).filter(|&j| j != i && j != g - i).collect();
        let found: Vec<AffineElement> =
            parabolic_elements(&generators, g)?.par_iter().map(|u| u * &t).filter(is_admissible).collect();
        all.extend(found);
    }
    let mut keyed: Vec<(usize, AffineElement)> = all.into_iter().map(|x| (x.length(), x)).collect();
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, x)| x).collect())
}

/// `(lower, upper)` bounds on `dim S_I`; equal for even `g`.
pub fn supersingular_dim_bounds(g: usize) -> (usize, usize) {
    if g.is_multiple_of(2) {
        (g * g / 2, g * g / 2)
    } else {
        (g * (g - 1) / 2, (g * g - 1) / 2)
    }
}

/// `{y ∈ Adm(μ) : y ≤ x}`.
pub fn closure(x: &AffineElement) -> Result<Vec<AffineElement>> {
    closure_below(x)
}

/// `ES(wτ) = {w}` for final `w`.
pub fn es_of_wtau(w: &SignedPermutation) -> Result<Vec<SignedPermutation>> {
    if !w.is_final() {
        return Err(Error::NotFinal(w.to_string()));
    }
    Ok(vec![w.clone()])
}

/// One row of the `g = 2` table of EO strata meeting each KR stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EsRow {
    /// `x = s_{word} τ`.
    pub word: &'static [usize],
    pub es: &'static [&'static str],
    pub p_rank: usize,
}

/// Final elements for `g = 2`, by label.
pub const G2_FINAL_LABELS: [(&str, &[usize]); 4] =
    [("w_ssp", &[]), ("w_ssi", &[2]), ("w_1", &[1, 2]), ("w_2", &[2, 1, 2])];

/// Checked-in data: the EO strata meeting each KR stratum for `g = 2`,
/// as published for the Siegel threefold with Iwahori level. Displayed only.
pub const G2_ES_TABLE: [EsRow; 13] = [
    EsRow { word: &[], es: &["w_ssp"], p_rank: 0 },
    EsRow { word: &[1], es: &["w_ssp"], p_rank: 0 },
    EsRow { word: &[0], es: &["w_ssi"], p_rank: 0 },
    EsRow { word: &[2], es: &["w_ssi"], p_rank: 0 },
    EsRow { word: &[0, 2], es: &["w_ssp", "w_ssi"], p_rank: 0 },
    EsRow { word: &[0, 1], es: &["w_1"], p_rank: 1 },
    EsRow { word: &[2, 1], es: &["w_1"], p_rank: 1 },
    EsRow { word: &[1, 0], es: &["w_1"], p_rank: 1 },
    EsRow { word: &[1, 2], es: &["w_1"], p_rank: 1 },
    EsRow { word: &[1, 2, 0], es: &["w_2"], p_rank: 2 },
    EsRow { word: &[0, 1, 0], es: &["w_2"], p_rank: 2 },
    EsRow { word: &[2, 1, 2], es: &["w_2"], p_rank: 2 },
    EsRow { word: &[0, 2, 1], es: &["w_2"], p_rank: 2 },
];

pub fn g2_es_table() -> &'static [EsRow] {
    &G2_ES_TABLE
}

impl EsRow {
    pub fn element(&self) -> AffineElement {
        AffineElement::from_word(self.word, 1, 2).expect("fixture words are valid")
    }

    /// `s_{word}τ`, spelled as in the table.
    pub fn label(&self) -> String {
        ReducedWord { letters: self.word.to_vec(), omega_power: 1 }.to_string()
    }
}

pub fn g2_final_element(label: &str) -> Option<SignedPermutation> {
    let (_, word) = G2_FINAL_LABELS.iter().find(|(l, _)| *l == label)?;
    Some(AffineElement::from_word(word, 0, 2).ok()?.w().clone())
}

/// ES labels where known: the `g = 2` fixture, or `{w}` for `x = wτ`, `w` final.
pub fn known_es(x: &AffineElement) -> Option<Vec<String>> {
    let g = x.g();
    if g == 2 {
        if let Some(row) = G2_ES_TABLE.iter().find(|r| r.element() == *x) {
            return Some(row.es.iter().map(|s| s.to_string()).collect());
        }
    }
    let u = x * &tau(g).inverse();
    if u.lambda().entries().iter().all(|&c| c == 0) && u.w().is_final() {
        let word = AffineElement::finite(u.w().clone()).reduced_word().ok()?;
        let name = if word.letters.is_empty() { "id".to_string() } else { word.to_string() };
        return Some(vec![name]);
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub x: AffineElement,
    pub word: ReducedWord,
    pub dim: usize,
    pub p_rank: usize,
    pub support: Vec<usize>,
    pub superspecial: bool,
    pub es: Option<Vec<String>>,
}

impl StratumRecord {
    pub fn new(x: &AffineElement) -> Result<Self> {
        require_admissible(x)?;
        Self::of_admissible(x)
    }

    fn of_admissible(x: &AffineElement) -> Result<Self> {
        let support = support_unchecked(x)?;
        Ok(Self {
            x: x.clone(),
            word: x.reduced_word()?,
            dim: x.length(),
            p_rank: x.w().fixed_points_in_first_half(),
            superspecial: misses_a_pair(x.g(), &support),
            support: support.into_iter().collect(),
            es: known_es(x),
        })
    }
}

/// One record per element of `Adm(μ)`, canonically ordered.
pub fn strata_table(g: usize) -> Result<Vec<StratumRecord>> {
    strata_table_bounded(g, DEFAULT_MAX_G)
}

pub fn strata_table_bounded(g: usize, max_g: usize) -> Result<Vec<StratumRecord>> {
    enumerate_adm_bounded(g, max_g)?.elements.par_iter().map(StratumRecord::of_admissible).collect()
}
