//! The localization-kernel calculus: the binomial elements `d_{α,±}^{(m)}`,
//! the geometric series `s_α` and its antisymmetrized powers `y_α^{(n)}`,
//! the section of multiplication by `d_{α,−}`, kernel bases for the
//! multiplication maps `t_α^n` and their products, exact membership
//! coordinates, and the regularity-strip test.
//!
//! All unbounded objects are produced by closed-form constructors that
//! populate an arbitrary requested window exactly, so every identity here is
//! certified on an explicitly named window.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{pairing, RootDatum, Weight};
use crate::series::{self, FormalSeries, SupportWindow};
use crate::{rat, Coord, Rat};

/// `binom(n, k)` as an exact rational.
fn binom(n: i64, k: i64) -> Rat {
    if k < 0 || k > n {
        return Rat::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Rat::new(num, den)
}

/// Coefficient of `α^{n/2+k}` in `s_α^n`.
pub fn s_pow_coefficient(n: u32, k: i64) -> Rat {
    binom(n as i64 - 1 + k, n as i64 - 1)
}

/// Coefficient of `α^{(n−1)/2+k}` in `d_{α,+}·s_α^n`, including the
/// convention that the factor is 1 at `n = 1, k = 0`.
pub fn d_plus_s_pow_coefficient(n: u32, k: i64) -> Rat {
    let n = n as i64;
    if n == 1 && k == 0 {
        return Rat::one();
    }
    Rat::new(BigInt::from(n - 1 + 2 * k), BigInt::from(n - 1 + k)) * binom(n - 1 + k, n - 1)
}

/// `d_{α,±}^{(m)} = α^{−m/2} ± α^{m/2}` as a finite series. `m = 0` gives
/// `2` for the plus sign and `0` for the minus sign.
pub fn d_pm(alpha: &Weight, m: u32, plus: bool) -> Result<FormalSeries> {
    let half = alpha.scaled(m as Coord).half()?;
    let lo = FormalSeries::monomial(-&half, rat(1));
    let hi = FormalSeries::monomial(half, if plus { rat(1) } else { rat(-1) });
    Ok(series::add(&lo, &hi))
}

/// `d_{α,−} = α^{−1/2} − α^{1/2}`.
pub fn d_minus(alpha: &Weight) -> Result<FormalSeries> {
    d_pm(alpha, 1, false)
}

/// `d_{α,+} = α^{−1/2} + α^{1/2}`.
pub fn d_plus(alpha: &Weight) -> Result<FormalSeries> {
    d_pm(alpha, 1, true)
}

/// Truncation of `s_α^n = Σ_k binom(n−1+k, n−1)·α^{n/2+k}` exact on the
/// window.
pub fn s_pow(alpha: &Weight, n: u32, window: &SupportWindow) -> Result<FormalSeries> {
    if n == 0 {
        return Err(Error::InvalidArgument("s_α^n needs n ≥ 1".into()));
    }
    ray_product(&[alpha.clone()], &[n], window)
}

/// Truncation of `(w_α s_α)^n`, the reflected ray.
pub fn w_s_pow(alpha: &Weight, n: u32, window: &SupportWindow) -> Result<FormalSeries> {
    let up = ray_product(&[alpha.clone()], &[n], &window.negated())?;
    Ok(series::dual(&up))
}

/// Product `Π_i s_{α_i}^{n_i}` exact on the window. All factors are upward
/// rays along positive roots (nonnegative coordinates), so each coefficient
/// on the window is a finite, fully enumerated sum.
fn ray_product(roots: &[Weight], powers: &[u32], window: &SupportWindow) -> Result<FormalSeries> {
    let dim = window.dim();
    // Start of each ray, and the sum of the other starts: contributions of
    // factor i to the window cannot exceed window.hi − Σ_{j≠i} start_j.
    let starts: Vec<Weight> = roots
        .iter()
        .zip(powers)
        .map(|(a, &n)| a.scaled(n as Coord).half())
        .collect::<Result<_>>()?;
    let mut acc = FormalSeries::one(dim);
    for (i, (alpha, &n)) in roots.iter().zip(powers).enumerate() {
        let mut bound = window.bounds.iter().map(|&(_, hi)| hi).collect::<Vec<_>>();
        for (j, s) in starts.iter().enumerate() {
            if j != i {
                for (b, c) in bound.iter_mut().zip(&s.0) {
                    *b -= c;
                }
            }
        }
        let mut kmax: Option<i64> = None;
        for (c, &a) in alpha.0.iter().enumerate() {
            if a > 0 {
                // (n + 2k)/2 · a ≤ bound[c]
                let k = (2 * bound[c] / a - n as i64).div_euclid(2);
                kmax = Some(kmax.map_or(k, |m: i64| m.min(k)));
            }
        }
        let kmax = kmax.ok_or_else(|| {
            Error::InvalidArgument("ray root has no positive coordinate".into())
        })?;
        let mut factor = FormalSeries::zero(dim);
        for k in 0..=kmax.max(-1) {
            let wt = alpha.scaled(n as Coord + 2 * k).half()?;
            factor = series::add(
                &factor,
                &FormalSeries::monomial(wt, s_pow_coefficient(n, k)),
            );
        }
        acc = series::mul_poly_series(&acc, &factor)?;
    }
    Ok(FormalSeries::from_closed_form(
        dim,
        window.clone(),
        acc.terms().map(|(w, c)| (w.clone(), c.clone())),
    ))
}

/// `y_α^{(n)} = s_α^n + (−1)^{n+1} (w_α s_α)^n`, exact on the window;
/// `y^{(0)} = 0`.
pub fn y_uni(alpha: &Weight, n: u32, window: &SupportWindow) -> Result<FormalSeries> {
    y_multi(&[alpha.clone()], &[n], window)
}

/// `y_{α}^{n} = Π s_{α_i}^{n_i} + (−1)^{1+Σn_i} Π (w_{α_i} s_{α_i})^{n_i}`
/// for pairwise distinct roots, exact on the window. A zero power total
/// yields the zero series on the window.
pub fn y_multi(roots: &[Weight], powers: &[u32], window: &SupportWindow) -> Result<FormalSeries> {
    if roots.len() != powers.len() {
        return Err(Error::InvalidArgument(
            "roots and powers length mismatch".into(),
        ));
    }
    for (i, a) in roots.iter().enumerate() {
        for b in roots.iter().skip(i + 1) {
            if a == b {
                return Err(Error::InvalidArgument("repeated root in tuple".into()));
            }
        }
    }
    let total: u32 = powers.iter().sum();
    if total == 0 {
        return Ok(FormalSeries::zero_on(window.dim(), window.clone()));
    }
    let keep: Vec<(Weight, u32)> = roots
        .iter()
        .zip(powers)
        .filter(|(_, &n)| n > 0)
        .map(|(a, &n)| (a.clone(), n))
        .collect();
    let (kroots, kpowers): (Vec<Weight>, Vec<u32>) = keep.into_iter().unzip();
    let up = ray_product(&kroots, &kpowers, window)?;
    let down = series::dual(&ray_product(&kroots, &kpowers, &window.negated())?);
    let sign = if (1 + total) % 2 == 0 { rat(1) } else { rat(-1) };
    Ok(series::add(&up, &down.scale(&sign)))
}

/// The section `p_α(m) = s_α·m_α^+ − (w_α s_α)·m_α^−` of multiplication by
/// `d_{α,−}`, produced exactly on the requested window.
///
/// For finite `m` every contribution is enumerated. For a window `m` the
/// needed slab of `m`-coefficients must lie in its exact region, otherwise
/// the certificate would be empty and the call errors.
pub fn section_p(
    alpha: &Weight,
    m: &FormalSeries,
    window: &SupportWindow,
    datum: &RootDatum,
) -> Result<FormalSeries> {
    if !datum.is_root(alpha) {
        return Err(Error::NotARoot(alpha.0.clone()));
    }
    if !m.is_finite() {
        let needed = section_needed_box(alpha, window, datum)?;
        if !m.certifies(&needed) {
            return Err(Error::Uncertifiable(
                "input series is not exact on the slab the section reads".into(),
            ));
        }
    }
    let (mp, mm) = series::split_by_root(m, alpha, datum)?;
    let half = alpha.half()?;
    let mut out: Vec<(Weight, Rat)> = Vec::new();
    // s_α·m⁺: contributions y + (1/2 + k)α, k ≥ 0
    accumulate_ray(&mut out, &mp, &half, alpha, window, false)?;
    // −(w_α s_α)·m⁻: contributions y − (1/2 + k)α with coefficient −c
    accumulate_ray(&mut out, &mm, &half, alpha, window, true)?;
    Ok(FormalSeries::from_closed_form(
        window.dim(),
        window.clone(),
        out,
    ))
}

fn accumulate_ray(
    out: &mut Vec<(Weight, Rat)>,
    part: &FormalSeries,
    half: &Weight,
    alpha: &Weight,
    window: &SupportWindow,
    downward: bool,
) -> Result<()> {
    for (y, c) in part.terms() {
        let coeff = if downward { -c.clone() } else { c.clone() };
        let mut k = 0i64;
        loop {
            let shift = half + &alpha.scaled(k);
            let x = if downward { y - &shift } else { y + &shift };
            // past the window in every coordinate the ray still moves in
            let receding = alpha.0.iter().enumerate().filter(|(_, &a)| a != 0).all(
                |(i, &a)| {
                    let (lo, hi) = window.bounds[i];
                    let step = if downward { -a } else { a };
                    (step > 0 && x.0[i] > hi) || (step < 0 && x.0[i] < lo)
                },
            );
            if window.contains(&x) {
                out.push((x, coeff.clone()));
            } else if receding {
                break;
            }
            k += 1;
            if k > 10_000 {
                return Err(Error::InvalidArgument(
                    "ray enumeration exceeded sanity bound".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Box of `m`-coefficients the section reads while producing `window`.
/// The plus part reads `y = x − (1/2+k)α` down to `⟨y, α⟩ ≥ 0`, the minus
/// part mirrors it; a symmetric pad by the farthest shift covers both.
fn section_needed_box(
    alpha: &Weight,
    window: &SupportWindow,
    datum: &RootDatum,
) -> Result<SupportWindow> {
    let norm = pairing(alpha, alpha, datum)?;
    let mut peak = Rat::zero();
    for corner in window_corners(window) {
        let v = pairing(&corner, alpha, datum)?;
        if v.abs() > peak {
            peak = v.abs();
        }
    }
    let kmax: i64 = {
        let f = (peak / norm).floor();
        crate::lattice::rat_to_i64(&f)?.max(0) + 1
    };
    let far = &alpha.half()? + &alpha.scaled(kmax);
    let pad: Vec<Coord> = far.0.iter().map(|c| c.abs()).collect();
    let neg: Vec<Coord> = pad.iter().map(|c| -c).collect();
    Ok(window.dilate(&neg, &pad))
}

fn window_corners(window: &SupportWindow) -> Vec<Weight> {
    let d = window.dim();
    (0u32..(1 << d))
        .map(|mask| {
            Weight(
                (0..d)
                    .map(|i| {
                        if mask & (1 << i) != 0 {
                            window.bounds[i].1
                        } else {
                            window.bounds[i].0
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

/// Multiplication by `Π_i d_{α_i,−}^{n_i}` with erosion bookkeeping.
pub fn t_apply(roots: &[Weight], powers: &[u32], s: &FormalSeries) -> Result<FormalSeries> {
    let mut acc = s.clone();
    for (alpha, &n) in roots.iter().zip(powers) {
        let d = d_minus(alpha)?;
        for _ in 0..n {
            acc = series::mul_poly_series(&d, &acc)?;
        }
    }
    Ok(acc)
}

/// Symbolic descriptor of one kernel-basis element
/// `rep · y_{α_R}^{k_R} · Π_{j ∈ J} d_{α_j,+}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelGenerator {
    /// Retained roots of the configuration (nonempty).
    pub roots: Vec<Weight>,
    /// Powers `1 ≤ k_i ≤ n_i` attached to the retained roots.
    pub powers: Vec<u32>,
    /// Indices into `roots` carrying a `d_{α,+}` factor.
    pub dplus: Vec<usize>,
    /// Representative monomial of the coefficient system.
    pub representative: Weight,
    /// Shift of the representative rule.
    pub lambda0: Weight,
}

impl KernelGenerator {
    /// Expansion exact on the requested window. The `y` part is built on a
    /// padded window so that the finite `d_{α,+}` and representative factors
    /// erode back to exactly the requested box.
    pub fn expand(&self, window: &SupportWindow) -> Result<FormalSeries> {
        let dim = window.dim();
        // support box of rep · Π d_{α_j,+}
        let mut extra = FormalSeries::monomial(self.representative.clone(), rat(1));
        for &j in &self.dplus {
            extra = series::mul_poly_series(&extra, &d_plus(&self.roots[j])?)?;
        }
        let (p_lo, p_hi) = extra
            .support_bbox()
            .unwrap_or((vec![0; dim], vec![0; dim]));
        // erode(E, p) = [E.lo + p_hi, E.hi + p_lo]; choose E so this covers
        // the window
        let y_window = SupportWindow::new(
            (0..dim)
                .map(|i| (window.bounds[i].0 - p_hi[i], window.bounds[i].1 - p_lo[i]))
                .collect(),
        )?;
        let y = y_multi(&self.roots, &self.powers, &y_window)?;
        let prod = series::mul_poly_series(&extra, &y)?;
        series::restrict_to_window(&prod, window)
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        json!({
            "roots": self.roots.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
            "powers": self.powers,
            "dplus": self.dplus,
            "representative": self.representative.0,
            "lambda0": self.lambda0.0,
        })
    }
}

/// Does the representative monomial satisfy the boundedness condition
/// `0 ≤ ⟨λ − λ0, α⟩/⟨α, α⟩ < 1/2` for the given root?
pub fn representative_in_bounds(
    rep: &Weight,
    lambda0: &Weight,
    alpha: &Weight,
    datum: &RootDatum,
) -> Result<bool> {
    let num = pairing(&(rep - lambda0), alpha, datum)?;
    let den = pairing(alpha, alpha, datum)?;
    let ratio = num / den;
    Ok(!ratio.is_negative() && ratio < crate::rat_frac(1, 2))
}

/// Kernel basis of `t_{α}^{n} = Π t_{α_i}^{n_i}` over a finite representative
/// box: enumerates `rep · y_{α_R}^{k_R} · Π_{j∈J} d_{α_j,+}` over all
/// nonempty retained subsets `R` of the root tuple, power tuples
/// `1 ≤ k_i ≤ n_i`, decorations `J ⊆ R`, and representatives from `rep_box`
/// that satisfy the boundedness condition for the retained roots (one
/// representative per coset of the lattice spanned by `{α_i^{1/2} : i ∈ R}`).
///
/// A representative that serves no retained subset at all is an error.
pub fn kernel_basis(
    datum: &RootDatum,
    roots: &[Weight],
    powers: &[u32],
    lambda0: &Weight,
    rep_box: &[Weight],
) -> Result<Vec<KernelGenerator>> {
    if roots.len() != powers.len() || roots.is_empty() {
        return Err(Error::InvalidArgument(
            "roots and powers must be nonempty and of equal length".into(),
        ));
    }
    if powers.iter().any(|&n| n == 0) {
        return Err(Error::InvalidArgument("powers must be positive".into()));
    }
    for (i, a) in roots.iter().enumerate() {
        if !datum.is_root(a) {
            return Err(Error::NotARoot(a.0.clone()));
        }
        for b in roots.iter().skip(i + 1) {
            if a == b {
                return Err(Error::InvalidArgument("repeated root in tuple".into()));
            }
        }
    }
    let r = roots.len();
    let mut used = vec![false; rep_box.len()];
    let mut out = Vec::new();
    for mask in 1u32..(1 << r) {
        let retained: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
        let rroots: Vec<Weight> = retained.iter().map(|&i| roots[i].clone()).collect();
        // representatives valid for this branch, one per coset of the
        // half-root lattice of the retained roots
        let halves: Vec<Weight> = rroots
            .iter()
            .map(|a| a.half())
            .collect::<Result<_>>()?;
        let mut reps: Vec<Weight> = Vec::new();
        'rep: for (ri, rep) in rep_box.iter().enumerate() {
            for a in &rroots {
                if !representative_in_bounds(rep, lambda0, a, datum)? {
                    continue 'rep;
                }
            }
            used[ri] = true;
            if reps
                .iter()
                .any(|prev| in_lattice_span(&(rep - prev), &halves))
            {
                continue;
            }
            reps.push(rep.clone());
        }
        // power tuples 1..=n_i per retained root
        let bounds: Vec<u32> = retained.iter().map(|&i| powers[i]).collect();
        for ktuple in power_tuples(&bounds) {
            for jmask in 0u32..(1 << retained.len()) {
                let dplus: Vec<usize> = (0..retained.len())
                    .filter(|j| jmask & (1 << j) != 0)
                    .collect();
                for rep in &reps {
                    out.push(KernelGenerator {
                        roots: rroots.clone(),
                        powers: ktuple.clone(),
                        dplus: dplus.clone(),
                        representative: rep.clone(),
                        lambda0: lambda0.clone(),
                    });
                }
            }
        }
    }
    if let Some(idx) = used.iter().position(|u| !u) {
        return Err(Error::RepresentativeOutOfBounds(rep_box[idx].0.clone()));
    }
    out.sort_by(|a, b| {
        (&a.roots, &a.powers, a.dplus.len(), &a.dplus, &a.representative).cmp(&(
            &b.roots,
            &b.powers,
            b.dplus.len(),
            &b.dplus,
            &b.representative,
        ))
    });
    Ok(out)
}

fn power_tuples(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        let mut next = Vec::new();
        for t in &out {
            for k in 1..=b {
                let mut v = t.clone();
                v.push(k);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Integer lattice membership via exhaustive small-coefficient search: the
/// desk-scale spans have rank ≤ 2 and tiny entries, so a bounded box search
/// is exact here.
fn in_lattice_span(w: &Weight, gens: &[Weight]) -> bool {
    if w.is_zero() {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let bound: i64 = {
        let wmax = w.0.iter().map(|c| c.abs()).max().unwrap_or(0);
        let gmin = gens
            .iter()
            .flat_map(|g| g.0.iter().map(|c| c.abs()).filter(|&c| c > 0))
            .min()
            .unwrap_or(1);
        (wmax / gmin + 2) * gens.len() as i64
    };
    fn search(rest: &Weight, gens: &[Weight], bound: i64) -> bool {
        match gens.split_first() {
            None => rest.is_zero(),
            Some((g, tail)) => (-bound..=bound)
                .any(|c| search(&(rest - &g.scaled(c)), tail, bound)),
        }
    }
    search(w, gens, bound)
}

/// Outcome of an exact membership solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Coordinates in the order of the basis generators.
    InSpan(Vec<Rat>),
    NotInSpan,
}

/// Expresses `z` in the expanded basis on the window, by exact linear
/// algebra over the window's lattice points. The expansions must be linearly
/// independent on the window (rank-deficiency is an error asking for a
/// larger window); the solution's residual is checked at every point.
pub fn membership_coordinates(
    z: &FormalSeries,
    basis: &[KernelGenerator],
    window: &SupportWindow,
) -> Result<Membership> {
    if !z.certifies(window) {
        return Err(Error::Uncertifiable(
            "membership window exceeds the exact region of the candidate".into(),
        ));
    }
    let expansions: Vec<FormalSeries> = basis
        .iter()
        .map(|g| g.expand(window))
        .collect::<Result<_>>()?;
    let points = window.points();
    let matrix: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| expansions.iter().map(|e| e.coeff(p)).collect())
        .collect();
    let rhs: Vec<Rat> = points.iter().map(|p| z.coeff(p)).collect();
    if linalg::rank(&matrix) < basis.len() {
        return Err(Error::RankDeficient);
    }
    match linalg::solve_least(&matrix, &rhs) {
        Some(coords) => {
            // residual check at every window point
            for (row, want) in matrix.iter().zip(&rhs) {
                let mut got = Rat::zero();
                for (a, c) in row.iter().zip(&coords) {
                    got += a.clone() * c.clone();
                }
                if got != *want {
                    return Ok(Membership::NotInSpan);
                }
            }
            Ok(Membership::InSpan(coords))
        }
        None => Ok(Membership::NotInSpan),
    }
}

/// Regularity-strip test: true iff no stored nonzero coefficient of `z`
/// sits inside the strip
/// `|⟨λ − λ0, α_i⟩| < (n_i+1)/2·⟨α_i,α_i⟩ + Σ_{j≠i} n_j/2·⟨α_i,α_j⟩`
/// for any `i`.
pub fn regularity_strip_check(
    z: &FormalSeries,
    roots: &[Weight],
    powers: &[u32],
    lambda0: &Weight,
    datum: &RootDatum,
) -> Result<bool> {
    for (lam, c) in z.terms() {
        if c.is_zero() {
            continue;
        }
        if weight_in_strip(lam, roots, powers, lambda0, datum)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Is the weight inside the regularity strip of some root of the
/// configuration?
pub fn weight_in_strip(
    lam: &Weight,
    roots: &[Weight],
    powers: &[u32],
    lambda0: &Weight,
    datum: &RootDatum,
) -> Result<bool> {
    for (i, alpha) in roots.iter().enumerate() {
        let lhs = pairing(&(lam - lambda0), alpha, datum)?.abs();
        let mut rhs =
            crate::rat_frac(powers[i] as i64 + 1, 2) * pairing(alpha, alpha, datum)?;
        for (j, beta) in roots.iter().enumerate() {
            if j != i {
                rhs += crate::rat_frac(powers[j] as i64, 2) * pairing(alpha, beta, datum)?;
            }
        }
        if lhs < rhs {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exact dense linear algebra over the rationals, sized for window solves.
pub mod linalg {
    use super::Rat;
    use num_traits::Zero;

    /// Row-echelon rank.
    pub fn rank(matrix: &[Vec<Rat>]) -> usize {
        let mut m: Vec<Vec<Rat>> = matrix.to_vec();
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank][col].clone();
            for r in 0..rows {
                if r != rank && !m[r][col].is_zero() {
                    let f = &m[r][col] / &pivot;
                    for c in col..cols {
                        let v = &m[rank][c] * &f;
                        m[r][c] -= v;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Solves `A·x = b` for a full-column-rank `A` (possibly overdetermined);
    /// returns `None` when the system is inconsistent.
    pub fn solve_least(matrix: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
        let rows = matrix.len();
        let cols = matrix.first().map_or(0, |r| r.len());
        let mut aug: Vec<Vec<Rat>> = matrix
            .iter()
            .zip(rhs)
            .map(|(row, b)| {
                let mut r = row.clone();
                r.push(b.clone());
                r
            })
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut prow = 0;
        for col in 0..cols {
            let Some(p) = (prow..rows).find(|&r| !aug[r][col].is_zero()) else {
                continue;
            };
            aug.swap(prow, p);
            let pivot = aug[prow][col].clone();
            for c in col..=cols {
                aug[prow][c] = &aug[prow][c] / &pivot;
            }
            for r in 0..rows {
                if r != prow && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=cols {
                        let v = &aug[prow][c] * &f;
                        aug[r][c] -= v;
                    }
                }
            }
            pivots.push((prow, col));
            prow += 1;
            if prow == rows {
                break;
            }
        }
        // inconsistent rows
        for r in prow..rows {
            if !aug[r][cols].is_zero() {
                return None;
            }
        }
        let mut x = vec![Rat::zero(); cols];
        for (r, c) in pivots {
            x[c] = aug[r][cols].clone();
        }
        Some(x)
    }

    /// Indices of a maximal linearly independent subset of columns.
    pub fn independent_columns(matrix: &[Vec<Rat>]) -> Vec<usize> {
        let rows = matrix.len();
        let cols = matrix.first().map_or(0, |r| r.len());
        let mut m: Vec<Vec<Rat>> = matrix.to_vec();
        let mut chosen = Vec::new();
        let mut prow = 0;
        for col in 0..cols {
            let Some(p) = (prow..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(prow, p);
            let pivot = m[prow][col].clone();
            for r in 0..rows {
                if r != prow && !m[r][col].is_zero() {
                    let f = &m[r][col] / &pivot;
                    for c in col..cols {
                        let v = &m[prow][c] * &f;
                        m[r][c] -= v;
                    }
                }
            }
            chosen.push(col);
            prow += 1;
            if prow == rows {
                break;
            }
        }
        chosen
    }
}
