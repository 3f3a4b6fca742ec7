//! Weyl denominators, the Weyl character formula, Kostant cohomology,
//! character fractions with localization arithmetic, restriction,
//! primary projection and translation at the numerator level.
//!
//! Localized elements are kept as canonical factored fractions
//! `numerator / Π (1 − [−α])^{m_α}` and compared by cross-multiplication of
//! finite numerators; denominators are never expanded into series for
//! equality tests.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::lattice::{coroot_pairing, is_dominant, ParabolicDatum, RootDatum, Weight};
use crate::series::{self, FormalSeries};
use crate::weyl::{generate_weyl_group, WeylElement};
use crate::rat;

/// Character fraction: finite numerator over the factored denominator
/// `Π_w (1 − [−w])^{m_w}`. Canonical form has no denominator factor dividing
/// the numerator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharacterFraction {
    pub numerator: FormalSeries,
    /// factor weight → multiplicity
    pub denominator: BTreeMap<Weight, u32>,
}

impl CharacterFraction {
    pub fn new(numerator: FormalSeries, denominator: BTreeMap<Weight, u32>) -> CharacterFraction {
        let mut f = CharacterFraction {
            numerator,
            denominator,
        };
        f.canonicalize();
        f
    }

    pub fn one(dim: usize) -> CharacterFraction {
        CharacterFraction {
            numerator: FormalSeries::one(dim),
            denominator: BTreeMap::new(),
        }
    }

    pub fn zero(dim: usize) -> CharacterFraction {
        CharacterFraction {
            numerator: FormalSeries::zero(dim),
            denominator: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.numerator.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Greedy exact division of the numerator by denominator factors.
    pub fn canonicalize(&mut self) {
        if self.numerator.is_zero() {
            self.denominator.clear();
            return;
        }
        loop {
            let mut progressed = false;
            let factors: Vec<Weight> = self.denominator.keys().cloned().collect();
            for alpha in factors {
                if self.denominator.get(&alpha).copied().unwrap_or(0) == 0 {
                    continue;
                }
                if let Some(q) = series::exact_divide(&self.numerator, &alpha, 1) {
                    self.numerator = q;
                    let m = self.denominator.get_mut(&alpha).unwrap();
                    *m -= 1;
                    if *m == 0 {
                        self.denominator.remove(&alpha);
                    }
                    progressed = true;
                }
            }
            if !progressed {
                break;
            }
        }
    }

    /// The finite series `Π (1 − [−w])^{m}` of the denominator.
    pub fn denominator_series(&self) -> FormalSeries {
        denominator_product(self.dim(), self.denominator.iter().map(|(w, m)| (w, *m)))
    }

    /// Cross-multiplied equality of fractions.
    pub fn equals(&self, other: &CharacterFraction) -> Result<bool> {
        let lhs = series::mul_poly_series(&self.numerator, &other.denominator_series())?;
        let rhs = series::mul_poly_series(&other.numerator, &self.denominator_series())?;
        Ok(lhs == rhs)
    }

    /// Expansion into true coefficients: exact division of the numerator by
    /// the full denominator. `None` when the fraction is not polynomial.
    pub fn expand(&self) -> Option<FormalSeries> {
        let mut cur = self.numerator.clone();
        for (alpha, m) in &self.denominator {
            cur = series::exact_divide(&cur, alpha, *m)?;
        }
        Some(cur)
    }

    /// Fraction JSON: `{"num": series, "den": [{"root": [...], "mult": m}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        json!({
            "num": series::to_json(&self.numerator),
            "den": self.denominator.iter().map(|(w, m)| {
                json!({"root": w.0, "mult": m})
            }).collect::<Vec<_>>(),
        })
    }
}

fn denominator_product<'a, I: Iterator<Item = (&'a Weight, u32)>>(
    dim: usize,
    factors: I,
) -> FormalSeries {
    let mut acc = FormalSeries::one(dim);
    for (alpha, m) in factors {
        let factor = series::sub(
            &FormalSeries::one(dim),
            &FormalSeries::monomial(-alpha, rat(1)),
        );
        for _ in 0..m {
            acc = series::mul_poly_series(&acc, &factor).expect("finite product");
        }
    }
    acc
}

/// Infinitesimal character: a Weyl-group orbit of `λ + ρ(u)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InfinitesimalCharacter {
    pub orbit: BTreeSet<Weight>,
}

impl InfinitesimalCharacter {
    pub fn of(lam_plus_rho: &Weight, group: &[WeylElement]) -> InfinitesimalCharacter {
        InfinitesimalCharacter {
            orbit: crate::weyl::orbit(group, lam_plus_rho).into_iter().collect(),
        }
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.orbit.contains(w)
    }
}

/// Denominator evaluation mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenominatorMode {
    Product,
    AlternatingSum,
}

/// The Weyl denominator of a parabolic datum, as a finite series.
///
/// Product mode: `Π_{α ∈ Δ(u)} (1 − [−α])^{m_α}`. Alternating-sum mode:
/// `Σ_w (−1)^{ℓ(w)} [w(ρ(u)) − ρ(u)]` over the full Weyl group of the datum.
pub fn weyl_denominator(
    datum: &RootDatum,
    par: &ParabolicDatum,
    mode: DenominatorMode,
) -> Result<FormalSeries> {
    match mode {
        DenominatorMode::Product => Ok(denominator_product(
            datum.rank,
            par.delta_u.iter().map(|(w, m)| (w, *m)),
        )),
        DenominatorMode::AlternatingSum => {
            let group = generate_weyl_group(datum)?;
            let mut acc = FormalSeries::zero(datum.rank);
            for w in &group {
                let term = &w.apply(&par.rho_u) - &par.rho_u;
                acc = series::add(&acc, &FormalSeries::monomial(term, rat(w.sign())));
            }
            Ok(acc)
        }
    }
}

/// Minimal-length coset representatives for the parabolic with nilradical
/// weights `Δ(u)`: the elements `w` with `w^{-1} Δ⁺(l) ⊆ Δ⁺(g)`, where
/// `Δ⁺(l)` is the set of positive roots not in `Δ(u)`.
pub fn coset_representatives(
    datum: &RootDatum,
    par: &ParabolicDatum,
) -> Result<Vec<WeylElement>> {
    let group = generate_weyl_group(datum)?;
    let delta_u: BTreeSet<&Weight> = par.delta_u.iter().map(|(w, _)| w).collect();
    let levi_positive: Vec<Weight> = datum
        .positive
        .iter()
        .map(|(w, _)| w.clone())
        .filter(|w| !delta_u.contains(w))
        .collect();
    let mut reps = Vec::new();
    'outer: for w in &group {
        let inv = invert(w);
        for beta in &levi_positive {
            let img = inv.apply(beta);
            if !datum.positive.iter().any(|(p, _)| *p == img) {
                continue 'outer;
            }
        }
        reps.push(w.clone());
    }
    Ok(reps)
}

fn invert(w: &WeylElement) -> WeylElement {
    // Weyl matrices are integral with determinant ±1; adjugate inversion is
    // fine at desk-scale dimensions.
    let d = w.dim();
    let m = &w.matrix;
    let det = det_i64(m);
    debug_assert!(det == 1 || det == -1);
    let mut inv = vec![vec![0i64; d]; d];
    for i in 0..d {
        for j in 0..d {
            let minor = minor_matrix(m, j, i);
            let c = det_i64(&minor) * if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[i][j] = c * det; // det ∈ {±1}, so 1/det = det
        }
    }
    WeylElement {
        matrix: inv,
        length: w.length,
    }
}

fn minor_matrix(m: &[Vec<i64>], skip_row: usize, skip_col: usize) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != skip_col)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => {
            let mut acc = 0;
            for j in 0..n {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * m[0][j] * det_i64(&minor_matrix(m, 0, j));
            }
            acc
        }
    }
}

/// Kostant's theorem: the `l`-highest weights of `H^q(u; V_λ)`, each with
/// multiplicity one. The admissible elements are the minimal coset
/// representatives; the shift uses the full `ρ`, which for a Borel equals
/// `ρ(u)`.
pub fn kostant_cohomology(
    lam: &Weight,
    datum: &RootDatum,
    par: &ParabolicDatum,
    q: i64,
) -> Result<Vec<(Weight, u32)>> {
    if !is_dominant(lam, datum)? {
        return Err(Error::NonDominant);
    }
    if q < 0 {
        return Ok(Vec::new());
    }
    let rho = ParabolicDatum::borel(datum)?.rho_u;
    let reps = coset_representatives(datum, par)?;
    let mut out = Vec::new();
    for w in &reps {
        if w.length == q as usize {
            out.push((&w.apply(&(lam + &rho)) - &rho, 1));
        }
    }
    out.sort();
    Ok(out)
}

/// Euler characteristic of `u`-cohomology as a signed finite series of
/// `l`-highest weights. For a Borel this is the Weyl-character numerator.
pub fn euler_numerator(
    lam: &Weight,
    datum: &RootDatum,
    par: &ParabolicDatum,
) -> Result<FormalSeries> {
    if !is_dominant(lam, datum)? {
        return Err(Error::NonDominant);
    }
    let rho = ParabolicDatum::borel(datum)?.rho_u;
    let reps = coset_representatives(datum, par)?;
    let mut acc = FormalSeries::zero(datum.rank);
    for w in &reps {
        let wt = &w.apply(&(lam + &rho)) - &rho;
        acc = series::add(&acc, &FormalSeries::monomial(wt, rat(w.sign())));
    }
    Ok(acc)
}

/// Weyl character formula: the canonical fraction of the irreducible of
/// highest weight `lam` with respect to a Borel.
pub fn weyl_character(
    lam: &Weight,
    datum: &RootDatum,
    par: &ParabolicDatum,
) -> Result<CharacterFraction> {
    let numerator = euler_numerator(lam, datum, par)?;
    let mut denominator = BTreeMap::new();
    for (w, m) in &par.delta_u {
        *denominator.entry(w.clone()).or_insert(0) += m;
    }
    Ok(CharacterFraction::new(numerator, denominator))
}

/// Weight multiplicities of the irreducible of highest weight `lam`.
pub fn weight_multiplicities(lam: &Weight, datum: &RootDatum) -> Result<FormalSeries> {
    let par = ParabolicDatum::borel(datum)?;
    let frac = weyl_character(lam, datum, &par)?;
    frac.expand().ok_or_else(|| {
        Error::InvalidArgument("character fraction did not expand to a finite series".into())
    })
}

/// Product of fractions: numerators multiply, denominator multiplicities
/// add, then canonicalize.
///
/// This is plain localized arithmetic. Reading the product as the character
/// of a tensor product is justified for absolute characters; for relative
/// (non-minimal parabolic) characters of infinite-dimensional classes that
/// reading is conjectural and nothing here certifies it.
pub fn frac_mul(a: &CharacterFraction, b: &CharacterFraction) -> Result<CharacterFraction> {
    if a.dim() != b.dim() {
        return Err(Error::MismatchedParabolic(
            "fractions on different lattices".into(),
        ));
    }
    let numerator = series::mul_poly_series(&a.numerator, &b.numerator)?;
    let mut denominator = a.denominator.clone();
    for (w, m) in &b.denominator {
        *denominator.entry(w.clone()).or_insert(0) += m;
    }
    Ok(CharacterFraction::new(numerator, denominator))
}

/// Sum of fractions over the least common denominator (per-factor maximum
/// multiplicity), then canonicalize.
pub fn frac_add(a: &CharacterFraction, b: &CharacterFraction) -> Result<CharacterFraction> {
    if a.dim() != b.dim() {
        return Err(Error::MismatchedParabolic(
            "fractions on different lattices".into(),
        ));
    }
    let mut den: BTreeMap<Weight, u32> = a.denominator.clone();
    for (w, m) in &b.denominator {
        let e = den.entry(w.clone()).or_insert(0);
        *e = (*e).max(*m);
    }
    let complement = |own: &BTreeMap<Weight, u32>| -> FormalSeries {
        denominator_product(
            a.dim(),
            den.iter().map(|(w, m)| {
                let have = own.get(w).copied().unwrap_or(0);
                (w, m - have)
            }),
        )
    };
    let na = series::mul_poly_series(&a.numerator, &complement(&a.denominator))?;
    let nb = series::mul_poly_series(&b.numerator, &complement(&b.denominator))?;
    Ok(CharacterFraction::new(series::add(&na, &nb), den))
}

/// Duality on fractions: weights negate; each factor `(1 − [α])` is
/// renormalized back to `−[α](1 − [−α])` so the denominator stays canonical.
pub fn frac_dual(a: &CharacterFraction) -> CharacterFraction {
    let mut numerator = series::dual(&a.numerator);
    let mut shift = Weight::zero(a.dim());
    let mut total = 0u32;
    for (alpha, m) in &a.denominator {
        shift = &shift - &alpha.scaled(*m as i64);
        total += m;
    }
    let sign = if total % 2 == 0 { rat(1) } else { rat(-1) };
    numerator = series::mul_poly_series(&FormalSeries::monomial(shift, sign), &numerator)
        .expect("finite product");
    CharacterFraction::new(numerator, a.denominator.clone())
}

/// A lattice map `Λ^{1/2} → Λ'^{1/2}` given by an integer matrix.
#[derive(Clone, Debug)]
pub struct LatticeMap {
    /// rows: target dimension, cols: source dimension
    pub matrix: Vec<Vec<i64>>,
}

impl LatticeMap {
    pub fn identity(dim: usize) -> LatticeMap {
        LatticeMap {
            matrix: (0..dim)
                .map(|i| (0..dim).map(|j| (i == j) as i64).collect())
                .collect(),
        }
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        Weight(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&w.0).map(|(m, c)| m * c).sum())
                .collect(),
        )
    }

    pub fn apply_series(&self, s: &FormalSeries) -> FormalSeries {
        let dim = self.matrix.len();
        FormalSeries::from_terms(dim, s.terms().map(|(w, c)| (self.apply(w), c.clone())))
    }
}

/// Restriction of a character fraction along a lattice map: the numerator
/// re-indexes, each denominator factor maps to the factor of its image
/// weight. A factor whose image vanishes makes the relative denominator
/// non-factorable and is an error.
pub fn restrict_fraction(
    a: &CharacterFraction,
    emb: &LatticeMap,
) -> Result<CharacterFraction> {
    let numerator = emb.apply_series(&a.numerator);
    let mut denominator: BTreeMap<Weight, u32> = BTreeMap::new();
    for (alpha, m) in &a.denominator {
        let img = emb.apply(alpha);
        if img.is_zero() {
            return Err(Error::NonFactorableDenominator);
        }
        *denominator.entry(img).or_insert(0) += m;
    }
    Ok(CharacterFraction::new(numerator, denominator))
}

/// Transitivity check `c_p(V_λ) = c_{p∩l}(c_q(V_λ))` for a Borel `p` inside
/// a parabolic `q`, as cross-multiplied fraction equality.
///
/// The left side is the absolute Weyl character. The right side expands the
/// relative character: each Kostant class of `H(u; V_λ)` is replaced by its
/// Levi Weyl-character numerator, with the relative denominator contributing
/// its factors.
pub fn compose_characters(
    lam: &Weight,
    datum: &RootDatum,
    borel: &ParabolicDatum,
    par: &ParabolicDatum,
) -> Result<bool> {
    for (w, m) in &par.delta_u {
        let mp = borel
            .delta_u
            .iter()
            .find(|(x, _)| x == w)
            .map(|(_, m)| *m)
            .unwrap_or(0);
        if mp < *m {
            return Err(Error::MismatchedParabolic(
                "parabolic nilradical is not contained in the Borel's".into(),
            ));
        }
    }
    let lhs = weyl_character(lam, datum, borel)?;

    // Levi data: positive roots of the datum not in Δ(u_q).
    let delta_u: BTreeSet<&Weight> = par.delta_u.iter().map(|(w, _)| w).collect();
    let levi_positive: Vec<(Weight, u32)> = datum
        .positive
        .iter()
        .filter(|(w, _)| !delta_u.contains(w))
        .cloned()
        .collect();
    let levi_simples: Vec<Weight> = datum
        .simple
        .iter()
        .filter(|s| levi_positive.iter().any(|(w, _)| w == *s))
        .cloned()
        .collect();
    let levi_datum = RootDatum {
        rank: datum.rank,
        gram: datum.gram.clone(),
        roots: levi_positive
            .iter()
            .cloned()
            .chain(levi_positive.iter().map(|(w, m)| (-w, *m)))
            .collect(),
        positive: levi_positive.clone(),
        simple: levi_simples,
        name: None,
    };
    let levi_group = generate_weyl_group(&levi_datum)?;
    let rho_l = {
        let mut two = Weight::zero(datum.rank);
        for (w, m) in &levi_positive {
            two = &two + &w.scaled(*m as i64);
        }
        two.half()?
    };

    let rho = ParabolicDatum::borel(datum)?.rho_u;
    let reps = coset_representatives(datum, par)?;
    let mut rhs_num = FormalSeries::zero(datum.rank);
    for w in &reps {
        let mu = &w.apply(&(lam + &rho)) - &rho;
        for v in &levi_group {
            let wt = &v.apply(&(&mu + &rho_l)) - &rho_l;
            rhs_num = series::add(
                &rhs_num,
                &FormalSeries::monomial(wt, rat(w.sign() * v.sign())),
            );
        }
    }
    let mut rhs_den: BTreeMap<Weight, u32> = BTreeMap::new();
    for (w, m) in par.delta_u.iter().chain(levi_positive.iter()) {
        *rhs_den.entry(w.clone()).or_insert(0) += m;
    }
    let rhs = CharacterFraction::new(rhs_num, rhs_den);
    lhs.equals(&rhs)
}

/// Projection of a numerator onto an infinitesimal character: keeps the
/// terms whose weight, shifted by `rho`, lies in the orbit.
pub fn primary_projection(
    num: &FormalSeries,
    chi: &InfinitesimalCharacter,
    rho: &Weight,
) -> FormalSeries {
    FormalSeries::from_terms(
        num.dim(),
        num.terms()
            .filter(|(w, _)| chi.contains(&(*w + rho)))
            .map(|(w, c)| (w.clone(), c.clone())),
    )
}

/// Jantzen-Zuckerman translation on numerators supported on `{w(λ+ρ) − ρ}`:
/// each coefficient `n_w` is carried from `w(λ+ρ)−ρ` to `w(λ+μ+ρ)−ρ`. Both
/// `λ+ρ` and `λ+μ+ρ` must be integrally dominant, and singular parameters
/// are accepted only in the equisingular case.
pub fn translate_numerator(
    num: &FormalSeries,
    lam: &Weight,
    mu: &Weight,
    rho: &Weight,
    datum: &RootDatum,
    group: &[WeylElement],
) -> Result<FormalSeries> {
    let source = lam + rho;
    let target = &(lam + mu) + rho;
    for check in [&source, &target] {
        for (alpha, _) in &datum.positive {
            if coroot_pairing(check, alpha, datum)?.is_negative() {
                return Err(Error::NonDominant);
            }
        }
    }
    let stab_source: Vec<_> = group
        .iter()
        .filter(|w| w.apply(&source) == source)
        .map(|w| w.matrix.clone())
        .collect();
    let stab_target: Vec<_> = group
        .iter()
        .filter(|w| w.apply(&target) == target)
        .map(|w| w.matrix.clone())
        .collect();
    if stab_source != stab_target {
        return Err(Error::NotEquisingular);
    }
    // Orbit points map one-to-one because the stabilizers agree.
    let mut map: BTreeMap<Weight, Weight> = BTreeMap::new();
    for w in group {
        let from = &w.apply(&source) - rho;
        let to = &w.apply(&target) - rho;
        if let Some(prev) = map.get(&from) {
            debug_assert_eq!(prev, &to);
        }
        map.insert(from, to);
    }
    let mut out = FormalSeries::zero(num.dim());
    for (w, c) in num.terms() {
        let to = map
            .get(w)
            .ok_or_else(|| Error::TranslationSupport(w.0.clone()))?;
        out = series::add(&out, &FormalSeries::monomial(to.clone(), c.clone()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_root_datum, NamedSystem};
    use crate::series::{add, mul_poly_series, sub};

    fn w(coords: &[i64]) -> Weight {
        Weight(coords.to_vec())
    }

    fn a1() -> (RootDatum, ParabolicDatum) {
        let d = make_root_datum(NamedSystem::A1);
        let p = ParabolicDatum::borel(&d).unwrap();
        (d, p)
    }

    #[test]
    fn denominator_single_factor() {
        let (d, p) = a1();
        let prod = weyl_denominator(&d, &p, DenominatorMode::Product).unwrap();
        let expected = sub(
            &FormalSeries::one(1),
            &FormalSeries::monomial(w(&[-2]), rat(1)),
        );
        assert_eq!(prod, expected);
        let alt = weyl_denominator(&d, &p, DenominatorMode::AlternatingSum).unwrap();
        assert_eq!(prod, alt);
    }

    #[test]
    fn denominator_formula_all_reduced_systems() {
        for sys in [
            NamedSystem::A1,
            NamedSystem::A1xA1,
            NamedSystem::A2,
            NamedSystem::B2,
            NamedSystem::G2,
        ] {
            let d = make_root_datum(sys);
            let p = ParabolicDatum::borel(&d).unwrap();
            let prod = weyl_denominator(&d, &p, DenominatorMode::Product).unwrap();
            let alt = weyl_denominator(&d, &p, DenominatorMode::AlternatingSum).unwrap();
            assert_eq!(prod, alt, "{:?}", sys);
        }
    }

    #[test]
    fn bc1_denominator_product() {
        let d = make_root_datum(NamedSystem::Bc1);
        let p = ParabolicDatum::borel(&d).unwrap();
        let prod = weyl_denominator(&d, &p, DenominatorMode::Product).unwrap();
        // (1 − [−α])(1 − [−2α])² expanded by hand
        let one = FormalSeries::one(1);
        let f1 = sub(&one, &FormalSeries::monomial(w(&[-2]), rat(1)));
        let f2 = sub(&one, &FormalSeries::monomial(w(&[-4]), rat(1)));
        let expected = mul_poly_series(&f1, &mul_poly_series(&f2, &f2).unwrap()).unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn weyl_character_trivial_and_adjoint() {
        let (d, p) = a1();
        let triv = weyl_character(&w(&[0]), &d, &p).unwrap();
        assert!(triv.equals(&CharacterFraction::one(1)).unwrap());

        // λ = α: numerator [α] − [−2α], expansion [α]+[0]+[−α], dim 3
        let adj = weyl_character(&w(&[2]), &d, &p).unwrap();
        let exp = adj.expand().unwrap();
        let expected = FormalSeries::from_terms(
            1,
            vec![(w(&[2]), rat(1)), (w(&[0]), rat(1)), (w(&[-2]), rat(1))],
        );
        assert_eq!(exp, expected);
        assert!(weyl_character(&w(&[-2]), &d, &p).is_err());
    }

    #[test]
    fn weyl_character_a2_fundamental() {
        let d = make_root_datum(NamedSystem::A2);
        let p = ParabolicDatum::borel(&d).unwrap();
        // ω1 = (4, 2) in the refined basis; the standard rep has 3 weights
        let frac = weyl_character(&w(&[4, 2]), &d, &p).unwrap();
        let exp = frac.expand().unwrap();
        assert_eq!(exp.num_terms(), 3);
        assert!(exp.terms().all(|(_, c)| *c == rat(1)));
    }

    #[test]
    fn kostant_a1_and_degree_bounds() {
        let (d, p) = a1();
        let h0 = kostant_cohomology(&w(&[2]), &d, &p, 0).unwrap();
        assert_eq!(h0, vec![(w(&[2]), 1)]);
        let h1 = kostant_cohomology(&w(&[2]), &d, &p, 1).unwrap();
        assert_eq!(h1, vec![(w(&[-4]), 1)]);
        assert!(kostant_cohomology(&w(&[2]), &d, &p, -1).unwrap().is_empty());
        assert!(kostant_cohomology(&w(&[2]), &d, &p, 2).unwrap().is_empty());
    }

    #[test]
    fn kostant_longest_element_weight() {
        let d = make_root_datum(NamedSystem::A2);
        let p = ParabolicDatum::borel(&d).unwrap();
        let h3 = kostant_cohomology(&w(&[0, 0]), &d, &p, 3).unwrap();
        // w0(ρ) − ρ = −2ρ
        assert_eq!(h3, vec![(w(&[-12, -12]), 1)]);
        let group = generate_weyl_group(&d).unwrap();
        let w0 = crate::weyl::longest_element(&group);
        assert_eq!(h3[0].0, &w0.apply(&p.rho_u) - &p.rho_u);
    }

    #[test]
    fn kostant_parabolic_degree_bound() {
        // the maximal parabolic has |Δ(u)| = 2 distinct weights: exactly one
        // class per degree 0..2, nothing beyond
        let d = make_root_datum(NamedSystem::A2);
        let p = ParabolicDatum::with_levi(&d, &[0]).unwrap();
        let lam = w(&[4, 2]);
        for q in 0..=2 {
            let classes = kostant_cohomology(&lam, &d, &p, q).unwrap();
            assert_eq!(classes.len(), 1, "degree {q}");
        }
        assert!(kostant_cohomology(&lam, &d, &p, 3).unwrap().is_empty());
        // degree 1 of the trivial module: the 2-dimensional Levi class of
        // highest weight −α2
        let h1 = kostant_cohomology(&w(&[0, 0]), &d, &p, 1).unwrap();
        assert_eq!(h1, vec![(w(&[0, -6]), 1)]);
    }

    #[test]
    fn euler_equals_weyl_numerator_on_borel() {
        let (d, p) = a1();
        let e = euler_numerator(&w(&[2]), &d, &p).unwrap();
        let expected = sub(
            &FormalSeries::monomial(w(&[2]), rat(1)),
            &FormalSeries::monomial(w(&[-4]), rat(1)),
        );
        assert_eq!(e, expected);
        // trivial module: H([C]) = W_q
        let e0 = euler_numerator(&w(&[0]), &d, &p).unwrap();
        assert_eq!(
            e0,
            weyl_denominator(&d, &p, DenominatorMode::Product).unwrap()
        );
    }

    pub(super) fn random_dominant(
        d: &RootDatum,
        rng: &mut impl rand::Rng,
        max_coord: i64,
    ) -> Weight {
        match d.name.as_deref() {
            Some("A1") => w(&[2 * rng.gen_range(0..=max_coord)]),
            Some("A2") => {
                let a = rng.gen_range(0..=max_coord);
                let b = rng.gen_range(0..=max_coord);
                w(&[4 * a + 2 * b, 2 * a + 4 * b])
            }
            _ => panic!("random_dominant supports A1 and A2"),
        }
    }

    #[test]
    fn riemann_roch_on_a1_a2() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x44);
        for sys in [NamedSystem::A1, NamedSystem::A2] {
            let d = make_root_datum(sys);
            let p = ParabolicDatum::borel(&d).unwrap();
            let wq = weyl_denominator(&d, &p, DenominatorMode::Product).unwrap();
            for _ in 0..5 {
                let lam = random_dominant(&d, &mut rng, 3);
                let ch = weight_multiplicities(&lam, &d).unwrap();
                let lhs = mul_poly_series(&wq, &ch).unwrap();
                let rhs = euler_numerator(&lam, &d, &p).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn frac_mul_unit_and_tensor_square() {
        let (d, p) = a1();
        let v = weyl_character(&w(&[2]), &d, &p).unwrap();
        let one = CharacterFraction::one(1);
        assert!(frac_mul(&v, &one).unwrap().equals(&v).unwrap());

        // 3⊗3 = 5⊕3⊕1: compare against brute-force weight convolution
        let sq = frac_mul(&v, &v).unwrap();
        let exp = sq.expand().unwrap();
        let ch = v.expand().unwrap();
        let conv = mul_poly_series(&ch, &ch).unwrap();
        assert_eq!(exp, conv);
        let five = weight_multiplicities(&w(&[4]), &d).unwrap();
        let three = weight_multiplicities(&w(&[2]), &d).unwrap();
        assert_eq!(conv, add(&add(&five, &three), &FormalSeries::one(1)));
    }

    #[test]
    fn frac_dual_examples() {
        let (d, p) = a1();
        let one = CharacterFraction::one(1);
        assert!(frac_dual(&one).equals(&one).unwrap());
        // adjoint of A1 is self-dual
        let v = weyl_character(&w(&[2]), &d, &p).unwrap();
        assert!(frac_dual(&v).equals(&v).unwrap());
        // involution on an asymmetric fraction
        let f = CharacterFraction::new(
            FormalSeries::monomial(w(&[3]), rat(1)),
            BTreeMap::from([(w(&[2]), 1)]),
        );
        assert!(frac_dual(&frac_dual(&f)).equals(&f).unwrap());
        // dual(T^{m/2}/(1−T)) = T^{−m/2}/(1−T^{−1}): with T = [α] and the
        // canonical (1 − [−α]) factor, c(D_m) has numerator −[(m−2)/2·α]
        // and its dual must come out with numerator [−m/2·α].
        let m = 4i64;
        let dm = CharacterFraction::new(
            FormalSeries::monomial(w(&[m - 2]), rat(-1)),
            BTreeMap::from([(w(&[2]), 1)]),
        );
        let dualized = frac_dual(&dm);
        assert_eq!(dualized.numerator, FormalSeries::monomial(w(&[-m]), rat(1)));
    }

    #[test]
    fn restriction_of_trivial_keeps_bc1_denominator() {
        // identity restriction of the uncanonicalized trivial character on
        // BC1: numerator W_q over (1−[−α])(1−[−2α])², reduces to 1
        let d = make_root_datum(NamedSystem::Bc1);
        let p = ParabolicDatum::borel(&d).unwrap();
        let wq = weyl_denominator(&d, &p, DenominatorMode::Product).unwrap();
        let mut den = BTreeMap::new();
        for (root, m) in &p.delta_u {
            *den.entry(root.clone()).or_insert(0) += m;
        }
        assert_eq!(den.get(&w(&[2])), Some(&1));
        assert_eq!(den.get(&w(&[4])), Some(&2));
        let triv = CharacterFraction {
            numerator: wq,
            denominator: den,
        };
        let restricted = restrict_fraction(&triv, &LatticeMap::identity(1)).unwrap();
        assert!(restricted.equals(&CharacterFraction::one(1)).unwrap());
        // restriction of the canonical 1 is 1
        let one = restrict_fraction(&CharacterFraction::one(1), &LatticeMap::identity(1))
            .unwrap();
        assert!(one.equals(&CharacterFraction::one(1)).unwrap());
    }

    #[test]
    fn compose_characters_a2() {
        let d = make_root_datum(NamedSystem::A2);
        let borel = ParabolicDatum::borel(&d).unwrap();
        let par = ParabolicDatum::with_levi(&d, &[0]).unwrap();
        // trivial, ρ, and 2ω1+ω2
        for lam in [w(&[0, 0]), w(&[6, 6]), w(&[10, 8])] {
            assert!(compose_characters(&lam, &d, &borel, &par).unwrap());
        }
    }

    #[test]
    fn restriction_compatible_with_composition_on_a2_levi() {
        // Restricting the ω1-character to the Levi torus along the identity
        // (the Cartan is shared) must agree with expanding through the
        // relative character: both equal the absolute character fraction.
        let d = make_root_datum(NamedSystem::A2);
        let borel = ParabolicDatum::borel(&d).unwrap();
        let frac = weyl_character(&w(&[4, 2]), &d, &borel).unwrap();
        let restricted = restrict_fraction(&frac, &LatticeMap::identity(2)).unwrap();
        assert!(restricted.equals(&frac).unwrap());
        let par = ParabolicDatum::with_levi(&d, &[0]).unwrap();
        assert!(compose_characters(&w(&[4, 2]), &d, &borel, &par).unwrap());
    }

    #[test]
    fn primary_projection_examples() {
        let (d, _p) = a1();
        let group = generate_weyl_group(&d).unwrap();
        // W_q numerator of A1: 1 − [−α]; orbit of ρ = α/2
        let chi = InfinitesimalCharacter::of(&w(&[1]), &group);
        let num = sub(
            &FormalSeries::one(1),
            &FormalSeries::monomial(w(&[-2]), rat(1)),
        );
        let rho = w(&[1]);
        assert_eq!(primary_projection(&num, &chi, &rho), num);
        // empty intersection projects to zero
        let far = InfinitesimalCharacter::of(&w(&[99]), &group);
        assert!(primary_projection(&num, &far, &rho).is_zero());
        // [α]−[−2α] + [5α] against the orbit of 3α/2 drops the stray term
        let core = sub(
            &FormalSeries::monomial(w(&[2]), rat(1)),
            &FormalSeries::monomial(w(&[-4]), rat(1)),
        );
        let num2 = add(&core, &FormalSeries::monomial(w(&[10]), rat(1)));
        let chi3 = InfinitesimalCharacter::of(&w(&[3]), &group);
        assert_eq!(primary_projection(&num2, &chi3, &rho), core);
    }

    #[test]
    fn translate_numerator_examples() {
        let (d, p) = a1();
        let group = generate_weyl_group(&d).unwrap();
        let rho = p.rho_u.clone();
        let num = sub(
            &FormalSeries::monomial(w(&[2]), rat(1)),
            &FormalSeries::monomial(w(&[-4]), rat(1)),
        );
        // μ = 0 is the identity
        let same = translate_numerator(&num, &w(&[2]), &w(&[0]), &rho, &d, &group).unwrap();
        assert_eq!(same, num);
        // λ = α, μ = α: [α]−[−2α] ↦ [2α]−[−3α]
        let moved = translate_numerator(&num, &w(&[2]), &w(&[2]), &rho, &d, &group).unwrap();
        assert_eq!(
            moved,
            sub(
                &FormalSeries::monomial(w(&[4]), rat(1)),
                &FormalSeries::monomial(w(&[-6]), rat(1)),
            )
        );
        // equisingular round trip
        let back = translate_numerator(&moved, &w(&[4]), &w(&[-2]), &rho, &d, &group).unwrap();
        assert_eq!(back, num);
    }

    #[test]
    fn translation_rejects_support_violations() {
        let (d, p) = a1();
        let group = generate_weyl_group(&d).unwrap();
        let stray = FormalSeries::monomial(w(&[7]), rat(1));
        let err = translate_numerator(&stray, &w(&[2]), &w(&[2]), &p.rho_u, &d, &group);
        assert!(matches!(err, Err(Error::TranslationSupport(_))));
    }

    #[test]
    fn translation_singular_cases() {
        // λ+ρ = 0 is singular; translating within the singular stratum is
        // fine, crossing into the regular stratum is rejected
        let (d, p) = a1();
        let group = generate_weyl_group(&d).unwrap();
        let lam = w(&[-1]);
        let num = FormalSeries::monomial(w(&[-1]), rat(2));
        let same =
            translate_numerator(&num, &lam, &w(&[0]), &p.rho_u, &d, &group).unwrap();
        assert_eq!(same, num);
        let err = translate_numerator(&num, &lam, &w(&[2]), &p.rho_u, &d, &group);
        assert!(matches!(err, Err(Error::NotEquisingular)));
    }

    #[test]
    fn fraction_addition_matches_direct_sums() {
        // the character map is additive: c(V) + c(W) expands to the union
        // of the weight multisets
        let d = make_root_datum(NamedSystem::A2);
        let lam = w(&[4, 2]);
        let mu = w(&[6, 6]);
        let p = ParabolicDatum::borel(&d).unwrap();
        let a = weyl_character(&lam, &d, &p).unwrap();
        let b = weyl_character(&mu, &d, &p).unwrap();
        let sum = frac_add(&a, &b).unwrap();
        let expected = add(
            &weight_multiplicities(&lam, &d).unwrap(),
            &weight_multiplicities(&mu, &d).unwrap(),
        );
        assert_eq!(sum.expand().unwrap(), expected);
    }

    #[test]
    fn restriction_respects_duals_and_products() {
        // on the BC1 lattice with the doubling map α ↦ 2α
        let doubling = LatticeMap {
            matrix: vec![vec![2]],
        };
        let f = CharacterFraction::new(
            FormalSeries::monomial(w(&[3]), rat(2)),
            BTreeMap::from([(w(&[2]), 1)]),
        );
        let g = CharacterFraction::new(
            sub(
                &FormalSeries::monomial(w(&[1]), rat(1)),
                &FormalSeries::monomial(w(&[-1]), rat(1)),
            ),
            BTreeMap::from([(w(&[2]), 1)]),
        );
        let r_dual = restrict_fraction(&frac_dual(&f), &doubling).unwrap();
        let dual_r = frac_dual(&restrict_fraction(&f, &doubling).unwrap());
        assert!(r_dual.equals(&dual_r).unwrap());
        let r_prod = restrict_fraction(&frac_mul(&f, &g).unwrap(), &doubling).unwrap();
        let prod_r = frac_mul(
            &restrict_fraction(&f, &doubling).unwrap(),
            &restrict_fraction(&g, &doubling).unwrap(),
        )
        .unwrap();
        assert!(r_prod.equals(&prod_r).unwrap());
        // additivity of restriction
        let r_sum = restrict_fraction(&frac_add(&f, &g).unwrap(), &doubling).unwrap();
        let sum_r = frac_add(
            &restrict_fraction(&f, &doubling).unwrap(),
            &restrict_fraction(&g, &doubling).unwrap(),
        )
        .unwrap();
        assert!(r_sum.equals(&sum_r).unwrap());
    }

    #[test]
    fn fraction_monoid_laws() {
        let d = make_root_datum(NamedSystem::A2);
        let p = ParabolicDatum::borel(&d).unwrap();
        let a = weyl_character(&w(&[4, 2]), &d, &p).unwrap();
        let b = weyl_character(&w(&[2, 4]), &d, &p).unwrap();
        let c = weyl_character(&w(&[6, 6]), &d, &p).unwrap();
        let ab_c = frac_mul(&frac_mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = frac_mul(&a, &frac_mul(&b, &c).unwrap()).unwrap();
        assert!(ab_c.equals(&a_bc).unwrap());
        let dual_prod = frac_dual(&frac_mul(&a, &b).unwrap());
        let prod_dual = frac_mul(&frac_dual(&a), &frac_dual(&b)).unwrap();
        assert!(dual_prod.equals(&prod_dual).unwrap());
    }
}
