//! Weight lattices, invariant bilinear forms, root data and parabolic data.
//!
//! Weights are integer coordinate vectors in a fixed basis of the square-root
//! lattice `Λ^{1/2}`, so every half-integral shift (`ρ(u)`, `α^{1/2}`, the
//! `−α/2` shift used by the rank-one kernel computations) has integer
//! coordinates. For the named systems A1, A1xA1, B2, G2 and BC1 the basis is
//! `{α_1^{1/2}, …, α_d^{1/2}}` and the root lattice `Λ` is exactly the
//! even-coordinate sublattice. For A2 the weight lattice has odd index 3 over
//! the root lattice, so the named A2 datum refines the basis by a factor of 3
//! (`α_i^{1/2} = 3·e_i`); this keeps every dominant integral weight at integer
//! coordinates while leaving all pairings and reflections unchanged.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{rat, rat_frac, Coord, Rat};

/// A point of the square-root weight lattice in the datum's fixed basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight(pub Vec<Coord>);

impl Weight {
    pub fn zero(dim: usize) -> Self {
        Weight(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Membership in the even-coordinate sublattice. For the systems whose
    /// basis is `{α_i^{1/2}}` this is exactly membership in the root lattice.
    pub fn is_even(&self) -> bool {
        self.0.iter().all(|&c| c % 2 == 0)
    }

    pub fn scaled(&self, k: Coord) -> Weight {
        Weight(self.0.iter().map(|&c| c * k).collect())
    }

    /// Exact halving; errors when a coordinate is odd.
    pub fn half(&self) -> Result<Weight> {
        if !self.is_even() {
            return Err(Error::NonIntegralImage);
        }
        Ok(Weight(self.0.iter().map(|&c| c / 2).collect()))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{:?}", self.0)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.dim(), rhs.dim());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.dim(), rhs.dim());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|&c| -c).collect())
    }
}

/// Label of a built-in desk-scale system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedSystem {
    A1,
    A1xA1,
    A2,
    B2,
    G2,
    /// Non-reduced rank-1 system `{±α, ±2α}` with `2α` of multiplicity 2.
    Bc1,
}

impl NamedSystem {
    pub fn parse(label: &str) -> Option<NamedSystem> {
        match label {
            "A1" => Some(NamedSystem::A1),
            "A1xA1" => Some(NamedSystem::A1xA1),
            "A2" => Some(NamedSystem::A2),
            "B2" => Some(NamedSystem::B2),
            "G2" => Some(NamedSystem::G2),
            "BC1" => Some(NamedSystem::Bc1),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            NamedSystem::A1 => "A1",
            NamedSystem::A1xA1 => "A1xA1",
            NamedSystem::A2 => "A2",
            NamedSystem::B2 => "B2",
            NamedSystem::G2 => "G2",
            NamedSystem::Bc1 => "BC1",
        }
    }
}

/// Root datum: invariant form, roots with multiplicities, positive system.
///
/// `gram` is the matrix of the invariant form on the coordinate basis of
/// `Λ^{1/2} ⊗ R`. Roots live in the root lattice `Λ`; only BC1 carries a root
/// of multiplicity larger than one.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub rank: usize,
    pub gram: Vec<Vec<Rat>>,
    /// All roots (positive and negative) with multiplicities.
    pub roots: Vec<(Weight, u32)>,
    /// The chosen positive subsystem, with multiplicities.
    pub positive: Vec<(Weight, u32)>,
    /// Simple roots of the positive system.
    pub simple: Vec<Weight>,
    pub name: Option<String>,
}

impl RootDatum {
    pub fn is_root(&self, w: &Weight) -> bool {
        self.roots.iter().any(|(r, _)| r == w)
    }

    pub fn root_multiplicity(&self, w: &Weight) -> u32 {
        self.roots
            .iter()
            .find(|(r, _)| r == w)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    /// Positive roots that are not a multiple of a shorter root. Length
    /// counting and Weyl-group bookkeeping use these, so that BC1's `2α`
    /// does not inflate `ℓ(w_α)`.
    pub fn indivisible_positive(&self) -> Vec<Weight> {
        self.positive
            .iter()
            .filter(|(r, _)| {
                let h = Weight(r.0.iter().map(|&c| c / 2).collect());
                !(r.is_even() && self.is_root(&h))
            })
            .map(|(r, _)| r.clone())
            .collect()
    }

    /// Distinct positive roots, ignoring multiplicities.
    pub fn distinct_positive(&self) -> Vec<Weight> {
        self.positive.iter().map(|(r, _)| r.clone()).collect()
    }
}

/// `⟨lam, beta⟩` via the datum's gram matrix.
pub fn pairing(lam: &Weight, beta: &Weight, datum: &RootDatum) -> Result<Rat> {
    if lam.dim() != datum.rank {
        return Err(Error::DimensionMismatch {
            expected: datum.rank,
            got: lam.dim(),
        });
    }
    if beta.dim() != datum.rank {
        return Err(Error::DimensionMismatch {
            expected: datum.rank,
            got: beta.dim(),
        });
    }
    let mut acc = Rat::zero();
    for (i, &a) in lam.0.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in beta.0.iter().enumerate() {
            if b == 0 {
                continue;
            }
            acc += &datum.gram[i][j] * rat(a) * rat(b);
        }
    }
    Ok(acc)
}

/// `2⟨lam, alpha⟩ / ⟨alpha, alpha⟩` as an exact rational.
pub fn coroot_pairing(lam: &Weight, alpha: &Weight, datum: &RootDatum) -> Result<Rat> {
    let num = pairing(lam, alpha, datum)?;
    let den = pairing(alpha, alpha, datum)?;
    Ok(rat(2) * num / den)
}

/// Root reflection `lam − ⟨lam, α^∨⟩·α`. The coroot coefficient may be
/// half-integral on `Λ^{1/2}`; only the image itself must have integer
/// coordinates, otherwise this is an internal consistency error.
pub fn reflect(alpha: &Weight, lam: &Weight, datum: &RootDatum) -> Result<Weight> {
    if !datum.is_root(alpha) {
        return Err(Error::NotARoot(alpha.0.clone()));
    }
    let c = coroot_pairing(lam, alpha, datum)?;
    let mut coords = Vec::with_capacity(lam.dim());
    for i in 0..lam.dim() {
        let v = rat(lam.0[i]) - c.clone() * rat(alpha.0[i]);
        if !v.is_integer() {
            return Err(Error::NonIntegralImage);
        }
        coords.push(rat_to_i64(&v)?);
    }
    Ok(Weight(coords))
}

pub(crate) fn rat_to_i64(r: &Rat) -> Result<Coord> {
    use num_traits::ToPrimitive;
    r.to_integer()
        .to_i64()
        .ok_or_else(|| Error::InvalidArgument("coordinate overflow".into()))
}

/// Dominance of `lam` with respect to the simple roots.
pub fn is_dominant(lam: &Weight, datum: &RootDatum) -> Result<bool> {
    for s in &datum.simple {
        if pairing(lam, s, datum)?.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parabolic datum: the nilradical weight multiset `Δ(u, l')` and its half sum.
#[derive(Clone, Debug)]
pub struct ParabolicDatum {
    pub delta_u: Vec<(Weight, u32)>,
    pub rho_u: Weight,
}

impl ParabolicDatum {
    /// Builds a parabolic datum from a weight multiset; validates that the
    /// half sum has integer coordinates.
    pub fn new(delta_u: Vec<(Weight, u32)>) -> Result<ParabolicDatum> {
        let dim = delta_u
            .first()
            .map(|(w, _)| w.dim())
            .ok_or_else(|| Error::InvalidDatum("empty Δ(u) multiset".into()))?;
        let mut two_rho = Weight::zero(dim);
        for (w, m) in &delta_u {
            two_rho = &two_rho + &w.scaled(*m as Coord);
        }
        let rho_u = two_rho.half()?;
        Ok(ParabolicDatum { delta_u, rho_u })
    }

    /// The Borel parabolic: `Δ(u)` is the full positive system.
    pub fn borel(datum: &RootDatum) -> Result<ParabolicDatum> {
        ParabolicDatum::new(datum.positive.clone())
    }

    /// Parabolic whose Levi factor keeps the simple roots at `levi` (indices
    /// into `datum.simple`); `Δ(u)` is every positive root outside the Levi
    /// root span.
    pub fn with_levi(datum: &RootDatum, levi: &[usize]) -> Result<ParabolicDatum> {
        let levi_simples: Vec<&Weight> = levi.iter().map(|&i| &datum.simple[i]).collect();
        let mut delta_u = Vec::new();
        for (r, m) in &datum.positive {
            if !in_span_nonneg(r, &levi_simples) {
                delta_u.push((r.clone(), *m));
            }
        }
        ParabolicDatum::new(delta_u)
    }

    /// Distinct weights of `Δ(u)`, without multiplicities.
    pub fn distinct_delta_u(&self) -> Vec<Weight> {
        self.delta_u.iter().map(|(w, _)| w.clone()).collect()
    }

    /// Number of distinct weights in `Δ(u)`.
    pub fn degree_bound(&self) -> usize {
        self.delta_u.len()
    }
}

/// Does `w` lie in the nonnegative integer span of `gens`? Small exhaustive
/// solver (the desk-scale systems have at most two simple roots).
fn in_span_nonneg(w: &Weight, gens: &[&Weight]) -> bool {
    fn go(w: &Weight, gens: &[&Weight]) -> bool {
        if w.is_zero() {
            return true;
        }
        for (i, g) in gens.iter().enumerate() {
            let diff = w - g;
            // Heuristic-free bounded search: coordinates shrink in l1 norm on
            // the chains we care about, loops cannot occur with positive roots.
            let l1 =
                |x: &Weight| -> i64 { x.0.iter().map(|c| c.abs()).sum() };
            if l1(&diff) < l1(w) && go(&diff, &gens[i..]) {
                return true;
            }
        }
        false
    }
    go(w, gens)
}

/// Builds a named desk-scale root datum, or validates explicit data.
pub fn make_root_datum(system: NamedSystem) -> RootDatum {
    let datum = match system {
        NamedSystem::A1 => datum_from_parts(
            1,
            vec![vec![rat_frac(1, 2)]],
            vec![(vec![2], 1)],
            vec![vec![2]],
            "A1",
        ),
        NamedSystem::A1xA1 => datum_from_parts(
            2,
            vec![
                vec![rat_frac(1, 2), rat(0)],
                vec![rat(0), rat_frac(1, 2)],
            ],
            vec![(vec![2, 0], 1), (vec![0, 2], 1)],
            vec![vec![2, 0], vec![0, 2]],
            "A1xA1",
        ),
        // Basis refined by 3 so the fundamental weights (4,2)/(2,4) are
        // integral: α_i = 6·e_i, gram = [[2,-1],[-1,2]]/36.
        NamedSystem::A2 => datum_from_parts(
            2,
            vec![
                vec![rat_frac(2, 36), rat_frac(-1, 36)],
                vec![rat_frac(-1, 36), rat_frac(2, 36)],
            ],
            vec![(vec![6, 0], 1), (vec![0, 6], 1), (vec![6, 6], 1)],
            vec![vec![6, 0], vec![0, 6]],
            "A2",
        ),
        // α1 long (⟨α1,α1⟩ = 4), α2 short (⟨α2,α2⟩ = 2).
        NamedSystem::B2 => datum_from_parts(
            2,
            vec![
                vec![rat(1), rat_frac(-1, 2)],
                vec![rat_frac(-1, 2), rat_frac(1, 2)],
            ],
            vec![
                (vec![2, 0], 1),
                (vec![0, 2], 1),
                (vec![2, 2], 1),
                (vec![2, 4], 1),
            ],
            vec![vec![2, 0], vec![0, 2]],
            "B2",
        ),
        // α1 short (⟨α1,α1⟩ = 2), α2 long (⟨α2,α2⟩ = 6).
        NamedSystem::G2 => datum_from_parts(
            2,
            vec![
                vec![rat_frac(1, 2), rat_frac(-3, 4)],
                vec![rat_frac(-3, 4), rat_frac(3, 2)],
            ],
            vec![
                (vec![2, 0], 1),
                (vec![0, 2], 1),
                (vec![2, 2], 1),
                (vec![4, 2], 1),
                (vec![6, 2], 1),
                (vec![6, 4], 1),
            ],
            vec![vec![2, 0], vec![0, 2]],
            "G2",
        ),
        NamedSystem::Bc1 => datum_from_parts(
            1,
            vec![vec![rat_frac(1, 2)]],
            vec![(vec![2], 1), (vec![4], 2)],
            vec![vec![2]],
            "BC1",
        ),
    };
    validate_datum(&datum).expect("built-in system must validate");
    datum
}

fn datum_from_parts(
    rank: usize,
    gram: Vec<Vec<Rat>>,
    positive: Vec<(Vec<Coord>, u32)>,
    simple: Vec<Vec<Coord>>,
    name: &str,
) -> RootDatum {
    let positive: Vec<(Weight, u32)> = positive
        .into_iter()
        .map(|(c, m)| (Weight(c), m))
        .collect();
    let mut roots = positive.clone();
    roots.extend(positive.iter().map(|(w, m)| (-w, *m)));
    RootDatum {
        rank,
        gram,
        roots,
        positive,
        simple: simple.into_iter().map(Weight).collect(),
        name: Some(name.to_string()),
    }
}

/// Full invariant check; explicit data goes through this before use.
pub fn validate_datum(datum: &RootDatum) -> Result<()> {
    let d = datum.rank;
    if datum.gram.len() != d || datum.gram.iter().any(|row| row.len() != d) {
        return Err(Error::InvalidDatum("gram matrix is not d×d".into()));
    }
    for i in 0..d {
        for j in 0..d {
            if datum.gram[i][j] != datum.gram[j][i] {
                return Err(Error::InvalidDatum("gram matrix is not symmetric".into()));
            }
        }
    }
    if !is_positive_semidefinite(&datum.gram) {
        return Err(Error::InvalidDatum(
            "gram matrix is not positive semidefinite".into(),
        ));
    }
    for (r, m) in &datum.roots {
        if r.dim() != d {
            return Err(Error::InvalidDatum("root of wrong dimension".into()));
        }
        if *m == 0 {
            return Err(Error::InvalidDatum("root with multiplicity 0".into()));
        }
        if !pairing(r, r, datum)?.is_positive() {
            return Err(Error::InvalidDatum(format!(
                "root {:?} has non-positive norm",
                r.0
            )));
        }
        if !datum.is_root(&-r) {
            return Err(Error::InvalidDatum(format!(
                "root set not symmetric: missing {:?}",
                (-r).0
            )));
        }
    }
    for (p, mp) in &datum.positive {
        if datum.root_multiplicity(p) != *mp {
            return Err(Error::InvalidDatum(
                "positive root multiplicity differs from root list".into(),
            ));
        }
        let simple_refs: Vec<&Weight> = datum.simple.iter().collect();
        if !in_span_nonneg(p, &simple_refs) {
            return Err(Error::InvalidDatum(format!(
                "positive root {:?} is not a nonnegative combination of simple roots",
                p.0
            )));
        }
    }
    for s in &datum.simple {
        if !datum.positive.iter().any(|(p, _)| p == s) {
            return Err(Error::InvalidDatum("simple root not positive".into()));
        }
    }
    // Form invariance under all root reflections, checked on all roots.
    for (alpha, _) in &datum.roots {
        for (x, _) in &datum.roots {
            for (y, _) in &datum.roots {
                let rx = reflect(alpha, x, datum)?;
                let ry = reflect(alpha, y, datum)?;
                if pairing(&rx, &ry, datum)? != pairing(x, y, datum)? {
                    return Err(Error::InvalidDatum(format!(
                        "gram not invariant under reflection in {:?}",
                        alpha.0
                    )));
                }
            }
        }
    }
    Ok(())
}

/// All principal minors nonnegative (exact). Fine at desk-scale ranks.
fn is_positive_semidefinite(gram: &[Vec<Rat>]) -> bool {
    let d = gram.len();
    for mask in 1u32..(1 << d) {
        let idx: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
        if minor_det(gram, &idx).is_negative() {
            return false;
        }
    }
    true
}

fn minor_det(gram: &[Vec<Rat>], idx: &[usize]) -> Rat {
    let n = idx.len();
    let mut m: Vec<Vec<Rat>> = idx
        .iter()
        .map(|&i| idx.iter().map(|&j| gram[i][j].clone()).collect())
        .collect();
    let mut det = Rat::from_integer(1.into());
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else {
            return Rat::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= m[col][col].clone();
        for r in (col + 1)..n {
            let f = &m[r][col] / &m[col][col];
            for c in col..n {
                let v = &m[col][c] * &f;
                m[r][c] -= v;
            }
        }
    }
    det
}

/// Fundamental weights of a named system, in lattice coordinates.
pub fn fundamental_weights(system: NamedSystem) -> Vec<Weight> {
    match system {
        NamedSystem::A1 => vec![Weight(vec![1])],
        NamedSystem::A1xA1 => vec![Weight(vec![1, 0]), Weight(vec![0, 1])],
        NamedSystem::A2 => vec![Weight(vec![4, 2]), Weight(vec![2, 4])],
        NamedSystem::B2 => vec![Weight(vec![2, 2]), Weight(vec![1, 2])],
        NamedSystem::G2 => vec![Weight(vec![4, 2]), Weight(vec![6, 4])],
        NamedSystem::Bc1 => vec![Weight(vec![1])],
    }
}

/// The dominant weight with the given fundamental-weight coordinates.
pub fn from_fundamental(system: NamedSystem, coords: &[Coord]) -> Result<Weight> {
    let fw = fundamental_weights(system);
    if coords.len() != fw.len() {
        return Err(Error::DimensionMismatch {
            expected: fw.len(),
            got: coords.len(),
        });
    }
    let mut acc = Weight::zero(fw[0].dim());
    for (c, w) in coords.iter().zip(&fw) {
        if *c < 0 {
            return Err(Error::NonDominant);
        }
        acc = &acc + &w.scaled(*c);
    }
    Ok(acc)
}

/// Parses explicit Cartan data from the structured text format:
///
/// ```text
/// rank 2
/// gram 1/2 -1/4
/// gram -1/4 1/2
/// positive 2,0 1
/// positive 0,2 1
/// positive 2,2 1
/// simple 2,0
/// simple 0,2
/// ```
///
/// Negative roots are added automatically. Multiplicity defaults to 1.
pub fn make_root_datum_from_str(input: &str) -> Result<RootDatum> {
    let mut rank: Option<usize> = None;
    let mut gram_rows: Vec<Vec<Rat>> = Vec::new();
    let mut positive: Vec<(Vec<Coord>, u32)> = Vec::new();
    let mut simple: Vec<Vec<Coord>> = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let key = parts.next().unwrap();
        let rest: Vec<&str> = parts.collect();
        let bad = |msg: &str| Error::Parse(format!("line {}: {}", lineno + 1, msg));
        match key {
            "rank" => {
                rank = Some(
                    rest.first()
                        .ok_or_else(|| bad("missing rank value"))?
                        .parse()
                        .map_err(|_| bad("rank is not an integer"))?,
                );
            }
            "gram" => {
                let row = rest
                    .iter()
                    .map(|t| parse_rat(t))
                    .collect::<Result<Vec<Rat>>>()?;
                gram_rows.push(row);
            }
            "positive" => {
                let coords = parse_coords(
                    rest.first().ok_or_else(|| bad("missing coordinates"))?,
                )?;
                let mult = match rest.get(1) {
                    Some(t) => t.parse().map_err(|_| bad("bad multiplicity"))?,
                    None => 1,
                };
                positive.push((coords, mult));
            }
            "simple" => {
                simple.push(parse_coords(
                    rest.first().ok_or_else(|| bad("missing coordinates"))?,
                )?);
            }
            other => return Err(bad(&format!("unknown key `{other}`"))),
        }
    }
    let rank = rank.ok_or_else(|| Error::Parse("missing `rank` line".into()))?;
    let mut datum = datum_from_parts(rank, gram_rows, positive, simple, "explicit");
    datum.name = None;
    validate_datum(&datum)?;
    Ok(datum)
}

pub(crate) fn parse_rat(token: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<num_bigint::BigInt> {
        t.parse()
            .map_err(|_| Error::Parse(format!("bad rational `{token}`")))
    };
    match token.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{token}`")));
            }
            Ok(Rat::new(parse_int(n)?, d))
        }
        None => Ok(Rat::from_integer(parse_int(token)?)),
    }
}

pub(crate) fn parse_coords(token: &str) -> Result<Vec<Coord>> {
    token
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coordinate list `{token}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_systems_have_classical_root_counts() {
        // (system, number of distinct root values)
        let cases = [
            (NamedSystem::A1, 2),
            (NamedSystem::A1xA1, 4),
            (NamedSystem::A2, 6),
            (NamedSystem::B2, 8),
            (NamedSystem::G2, 12),
            (NamedSystem::Bc1, 4),
        ];
        for (sys, count) in cases {
            let d = make_root_datum(sys);
            assert_eq!(d.roots.len(), count, "{:?}", sys);
        }
        assert_eq!(make_root_datum(NamedSystem::A2).positive.len(), 3);
    }

    #[test]
    fn a1_normalization() {
        let d = make_root_datum(NamedSystem::A1);
        let alpha = Weight(vec![2]);
        assert_eq!(pairing(&alpha, &alpha, &d).unwrap(), rat(2));
        let half = Weight(vec![1]);
        assert_eq!(pairing(&half, &alpha, &d).unwrap(), rat(1));
    }

    #[test]
    fn a2_gram_readoff() {
        let d = make_root_datum(NamedSystem::A2);
        let a1 = d.simple[0].clone();
        let a2 = d.simple[1].clone();
        assert_eq!(pairing(&a1, &a2, &d).unwrap(), rat(-1));
        assert_eq!(pairing(&a1, &a1, &d).unwrap(), rat(2));
    }

    #[test]
    fn bc1_multiplicities() {
        let d = make_root_datum(NamedSystem::Bc1);
        assert_eq!(d.root_multiplicity(&Weight(vec![4])), 2);
        assert_eq!(d.root_multiplicity(&Weight(vec![2])), 1);
        assert_eq!(d.indivisible_positive(), vec![Weight(vec![2])]);
    }

    #[test]
    fn reflect_examples() {
        let d = make_root_datum(NamedSystem::A1);
        let alpha = Weight(vec![2]);
        assert_eq!(reflect(&alpha, &alpha, &d).unwrap(), Weight(vec![-2]));
        assert_eq!(reflect(&alpha, &Weight(vec![0]), &d).unwrap(), Weight(vec![0]));

        let a2 = make_root_datum(NamedSystem::A2);
        let rho = Weight(vec![6, 6]); // α1 + α2
        let a1 = a2.simple[0].clone();
        assert_eq!(reflect(&a1, &rho, &a2).unwrap(), &rho - &a1);
    }

    #[test]
    fn reflect_rejects_non_roots() {
        let d = make_root_datum(NamedSystem::A1);
        assert!(reflect(&Weight(vec![1]), &Weight(vec![2]), &d).is_err());
    }

    #[test]
    fn reflection_involution_and_form_invariance_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1a77);
        for sys in [NamedSystem::A2, NamedSystem::B2, NamedSystem::G2, NamedSystem::Bc1] {
            let d = make_root_datum(sys);
            for _ in 0..250 {
                let lam = Weight((0..d.rank).map(|_| rng.gen_range(-40..=40)).collect());
                let mu = Weight((0..d.rank).map(|_| rng.gen_range(-40..=40)).collect());
                for (alpha, _) in d.roots.clone() {
                    let r = reflect(&alpha, &lam, &d).unwrap();
                    assert_eq!(reflect(&alpha, &r, &d).unwrap(), lam);
                    let rm = reflect(&alpha, &mu, &d).unwrap();
                    assert_eq!(
                        pairing(&r, &rm, &d).unwrap(),
                        pairing(&lam, &mu, &d).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn parabolic_rho_u() {
        let a2 = make_root_datum(NamedSystem::A2);
        let b = ParabolicDatum::borel(&a2).unwrap();
        assert_eq!(b.rho_u, Weight(vec![6, 6])); // ρ = α1+α2 for A2
        let p = ParabolicDatum::with_levi(&a2, &[0]).unwrap();
        assert_eq!(p.delta_u.len(), 2);
        // ρ(u) = (α2 + α1+α2)/2
        assert_eq!(p.rho_u, Weight(vec![3, 6]));
    }

    #[test]
    fn explicit_datum_roundtrip_and_validation() {
        let text = "\
rank 1
gram 1/2
positive 2 1
positive 4 2
simple 2
";
        let d = make_root_datum_from_str(text).unwrap();
        assert_eq!(d.rank, 1);
        assert_eq!(d.root_multiplicity(&Weight(vec![4])), 2);

        let bad = "\
rank 2
gram 1/2 1
gram -1 1/2
positive 2,0 1
simple 2,0
";
        let err = make_root_datum_from_str(bad).unwrap_err();
        assert!(matches!(err, Error::InvalidDatum(_)));
        assert!(err.to_string().contains("symmetric"));
    }

    #[test]
    fn semidefinite_gram_with_positive_roots_validates() {
        // a degenerate direction orthogonal to every root is allowed; the
        // form only needs positivity on the roots themselves
        let text = "\
rank 2
gram 1/2 0
gram 0 0
positive 2,0 1
simple 2,0
";
        let d = make_root_datum_from_str(text).unwrap();
        let alpha = Weight(vec![2, 0]);
        assert_eq!(pairing(&alpha, &alpha, &d).unwrap(), rat(2));
        // the degenerate coordinate is reflection-invariant
        let fixed = Weight(vec![0, 5]);
        assert_eq!(reflect(&alpha, &fixed, &d).unwrap(), fixed);
        // a root of zero norm is rejected
        let bad = "\
rank 2
gram 1/2 0
gram 0 0
positive 0,2 1
simple 0,2
";
        assert!(matches!(
            make_root_datum_from_str(bad),
            Err(Error::InvalidDatum(_))
        ));
    }

    #[test]
    fn b2_g2_fundamental_weights_are_integral() {
        // B2: ω1 = α1+α2, ω2 = α1/2 + α2; G2 weight lattice equals root lattice.
        let b2 = make_root_datum(NamedSystem::B2);
        let w2 = Weight(vec![1, 2]);
        assert_eq!(coroot_pairing(&w2, &b2.simple[0], &b2).unwrap(), rat(0));
        assert_eq!(coroot_pairing(&w2, &b2.simple[1], &b2).unwrap(), rat(1));
    }

    #[test]
    fn fundamental_weights_pair_correctly() {
        for sys in [
            NamedSystem::A1,
            NamedSystem::A1xA1,
            NamedSystem::A2,
            NamedSystem::B2,
            NamedSystem::G2,
        ] {
            let d = make_root_datum(sys);
            let fw = fundamental_weights(sys);
            assert_eq!(fw.len(), d.simple.len());
            for (i, w) in fw.iter().enumerate() {
                for (j, s) in d.simple.iter().enumerate() {
                    let expected = rat((i == j) as i64);
                    assert_eq!(
                        coroot_pairing(w, s, &d).unwrap(),
                        expected,
                        "{:?} ω_{} α_{}",
                        sys,
                        i,
                        j
                    );
                }
            }
        }
    }

    #[test]
    fn a2_fundamental_weights_are_integral() {
        let a2 = make_root_datum(NamedSystem::A2);
        let w1 = Weight(vec![4, 2]);
        let w2 = Weight(vec![2, 4]);
        assert_eq!(coroot_pairing(&w1, &a2.simple[0], &a2).unwrap(), rat(1));
        assert_eq!(coroot_pairing(&w1, &a2.simple[1], &a2).unwrap(), rat(0));
        assert_eq!(coroot_pairing(&w2, &a2.simple[0], &a2).unwrap(), rat(0));
        assert_eq!(coroot_pairing(&w2, &a2.simple[1], &a2).unwrap(), rat(1));
    }
}
