//! The μ-admissible set `Adm(μ)` for `μ = (1^g, 0^g)` and its Bruhat poset.
//!
//! `Adm(μ)` is enumerated downward from its maximal elements `t^{w(μ)}`.
//! The coatoms of `y` are exactly the single-letter deletions of one fixed
//! reduced word of `y` that drop the length by one, so the walk produces the
//! Hasse diagram along with the elements.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affine::{bruhat_leq, simple_affine, tau, AffineElement, ElementRecord, TranslationVector};
use crate::error::{Error, Result};
use crate::finite::SignedPermutation;

pub const DEFAULT_MAX_G: usize = 5;

/// Canonical order: `(length, λ, w)`.
pub fn canonical_cmp(a: &(usize, AffineElement), b: &(usize, AffineElement)) -> std::cmp::Ordering {
    a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1))
}

fn sort_canonical(elements: Vec<AffineElement>) -> Vec<AffineElement> {
    let mut keyed: Vec<(usize, AffineElement)> = elements.into_iter().map(|x| (x.length(), x)).collect();
    keyed.sort_by(canonical_cmp);
    keyed.into_iter().map(|(_, x)| x).collect()
}

/// The `2^g` translations `t^{w(μ)}`, canonically ordered.
pub fn maximal_elements(g: usize) -> Vec<AffineElement> {
    let n = 2 * g;
    let elements = (0u32..1 << g)
        .map(|choice| {
            let mut lambda = vec![0; n];
            for k in 0..g {
                let one = if choice >> k & 1 == 1 { n - 1 - k } else { k };
                lambda[one] = 1;
            }
            AffineElement::translation(TranslationVector::new(lambda).expect("pairs sum to one"))
        })
        .collect();
    sort_canonical(elements)
}

/// Elements `z ⋖ y` obtained by deleting one letter from the reduced word of `y`.
pub fn coatoms(y: &AffineElement) -> Result<Vec<AffineElement>> {
    let g = y.g();
    let word = y.reduced_word()?;
    let letters = &word.letters;
    let n = letters.len();
    let simple: Vec<AffineElement> = (0..=g).map(|i| simple_affine(i, g)).collect::<Result<_>>()?;
    // prefix[k] = s_{l_0} ⋯ s_{l_{k-1}}, suffix[k] = s_{l_k} ⋯ s_{l_{n-1}} τ^c
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(AffineElement::identity(g));
    for &i in letters {
        let next = prefix.last().unwrap() * &simple[i];
        prefix.push(next);
    }
    let mut suffix = vec![crate::affine::tau_power(g, word.omega_power); n + 1];
    for k in (0..n).rev() {
        suffix[k] = &simple[letters[k]] * &suffix[k + 1];
    }
    let mut out: Vec<AffineElement> =
        (0..n).map(|k| &prefix[k] * &suffix[k + 1]).filter(|z| z.length() + 1 == n).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `Adm(μ)` with lengths and cover relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissiblePoset {
    pub g: usize,
    pub elements: Vec<AffineElement>,
    pub lengths: Vec<usize>,
    /// `(lower, upper)` index pairs with `lower ⋖ upper`.
    pub covers: Vec<(usize, usize)>,
}

/// `(lower, upper)` with `lower ⋖ upper`.
type Cover = (AffineElement, AffineElement);

/// Downward closure of `seeds` under Bruhat covers, with the covers found.
fn downward_closure(seeds: Vec<AffineElement>) -> Result<(Vec<AffineElement>, Vec<Cover>)> {
    let mut seen: HashSet<AffineElement> = seeds.iter().cloned().collect();
    let mut level: Vec<AffineElement> = seeds;
    level.sort();
    let mut all = level.clone();
    let mut edges = Vec::new();
    while !level.is_empty() {
        let found: Vec<(AffineElement, Vec<AffineElement>)> =
            level.par_iter().map(|y| coatoms(y).map(|c| (y.clone(), c))).collect::<Result<_>>()?;
        let mut next = BTreeSet::new();
        for (y, below) in found {
            for z in below {
                if seen.insert(z.clone()) {
                    next.insert(z.clone());
                }
                edges.push((z, y.clone()));
            }
        }
        level = next.into_iter().collect();
        all.extend(level.iter().cloned());
    }
    Ok((all, edges))
}

impl AdmissiblePoset {
    fn from_parts(g: usize, elements: Vec<AffineElement>, edges: Vec<Cover>) -> Self {
        let elements = sort_canonical(elements);
        let index: HashMap<&AffineElement, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut covers: Vec<(usize, usize)> = edges.iter().map(|(a, b)| (index[a], index[b])).collect();
        covers.sort_unstable();
        covers.dedup();
        let lengths = elements.iter().map(AffineElement::length).collect();
        Self { g, elements, lengths, covers }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, x: &AffineElement) -> Option<usize> {
        let key = (x.length(), x.clone());
        self.elements.binary_search_by(|y| canonical_cmp(&(y.length(), y.clone()), &key)).ok()
    }

    pub fn contains(&self, x: &AffineElement) -> bool {
        self.index_of(x).is_some()
    }

    /// Indices of elements with no upper cover.
    pub fn maximal_indices(&self) -> Vec<usize> {
        let has_upper: HashSet<usize> = self.covers.iter().map(|&(lo, _)| lo).collect();
        (0..self.len()).filter(|i| !has_upper.contains(i)).collect()
    }

    /// Number of elements of each length `0, 1, ...`.
    pub fn length_histogram(&self) -> Vec<usize> {
        let max = self.lengths.iter().copied().max().unwrap_or(0);
        let mut hist = vec![0; max + 1];
        for &l in &self.lengths {
            hist[l] += 1;
        }
        hist
    }

    pub fn to_document(&self) -> Result<PosetDocument> {
        Ok(PosetDocument {
            g: self.g,
            elements: self.elements.iter().map(AffineElement::record).collect::<Result<_>>()?,
            covers: self.covers.clone(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(&self.to_document()?).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PosetDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.into_poset()
    }
}

/// Serialized poset: element records plus cover pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub g: usize,
    pub elements: Vec<ElementRecord>,
    pub covers: Vec<(usize, usize)>,
}

impl PosetDocument {
    pub fn into_poset(self) -> Result<AdmissiblePoset> {
        let elements: Vec<AffineElement> =
            self.elements.iter().map(ElementRecord::to_element).collect::<Result<_>>()?;
        if let Some(&(a, b)) = self.covers.iter().find(|&&(a, b)| a >= elements.len() || b >= elements.len()) {
            return Err(Error::Parse(format!("cover ({a}, {b}) out of range")));
        }
        let lengths = elements.iter().map(AffineElement::length).collect();
        Ok(AdmissiblePoset { g: self.g, elements, lengths, covers: self.covers })
    }
}

fn check_bound(g: usize, max_g: usize) -> Result<()> {
    if g == 0 {
        return Err(Error::ZeroRank);
    }
    if g > max_g {
        return Err(Error::BoundExceeded { g, bound: max_g });
    }
    Ok(())
}

pub fn enumerate_adm(g: usize) -> Result<AdmissiblePoset> {
    enumerate_adm_bounded(g, DEFAULT_MAX_G)
}

pub fn enumerate_adm_bounded(g: usize, max_g: usize) -> Result<AdmissiblePoset> {
    check_bound(g, max_g)?;
    let (elements, edges) = downward_closure(maximal_elements(g))?;
    Ok(AdmissiblePoset::from_parts(g, elements, edges))
}

/// `x ≤ t^{w(μ)}` for some `w ∈ W`.
pub fn is_admissible(x: &AffineElement) -> bool {
    let g = x.g();
    if x.omega_power() != 1 || x.length() > g * (g + 1) / 2 {
        return false;
    }
    maximal_elements(g).iter().any(|m| bruhat_leq(x, m))
}

/// `{y ∈ Adm(μ) : y ≤ x}`, canonically ordered.
pub fn closure_below(x: &AffineElement) -> Result<Vec<AffineElement>> {
    if !is_admissible(x) {
        return Err(Error::NotAdmissible(x.to_string()));
    }
    let (elements, _) = downward_closure(vec![x.clone()])?;
    Ok(sort_canonical(elements))
}

/// `Wτ ∩ Adm(μ)`, canonically ordered.
pub fn w_tau_slice(g: usize) -> Result<Vec<AffineElement>> {
    check_bound(g, DEFAULT_MAX_G)?;
    let t = tau(g);
    let elements = SignedPermutation::all_elements(g)
        .into_iter()
        .map(|w| &AffineElement::finite(w) * &t)
        .filter(is_admissible)
        .collect();
    Ok(sort_canonical(elements))
}
