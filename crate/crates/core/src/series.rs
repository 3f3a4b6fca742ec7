//! Sparse exact Laurent polynomials on `Λ^{1/2}` and window-truncated
//! unbounded Laurent series with exactness certificates.
//!
//! A `Finite` series is an honest element of `C[Λ^{1/2}]`: all coefficients
//! are true. A `Window` series is a truncation of an unbounded series: stored
//! coefficients inside `box` may include boundary garbage, but on the inner
//! `exact` box they are guaranteed equal to the untruncated series. Every
//! operation propagates the certificate; multiplication by a finite
//! polynomial erodes it by the polynomial's support.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{pairing, RootDatum, Weight};
use crate::{Coord, Rat};

/// An axis-aligned box of lattice points, inclusive per coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SupportWindow {
    pub bounds: Vec<(Coord, Coord)>,
}

impl SupportWindow {
    pub fn new(bounds: Vec<(Coord, Coord)>) -> Result<SupportWindow> {
        if bounds.iter().any(|(lo, hi)| lo > hi) {
            return Err(Error::InvalidArgument("window with min > max".into()));
        }
        Ok(SupportWindow { bounds })
    }

    /// The symmetric box `[-r, r]^d`.
    pub fn symmetric(dim: usize, r: Coord) -> SupportWindow {
        SupportWindow {
            bounds: vec![(-r, r); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        w.0.len() == self.bounds.len()
            && w.0
                .iter()
                .zip(&self.bounds)
                .all(|(&c, &(lo, hi))| lo <= c && c <= hi)
    }

    pub fn contains_window(&self, other: &SupportWindow) -> bool {
        self.bounds
            .iter()
            .zip(&other.bounds)
            .all(|(&(lo, hi), &(olo, ohi))| lo <= olo && ohi <= hi)
    }

    pub fn intersect(&self, other: &SupportWindow) -> Option<SupportWindow> {
        let bounds: Vec<(Coord, Coord)> = self
            .bounds
            .iter()
            .zip(&other.bounds)
            .map(|(&(a, b), &(c, d))| (a.max(c), b.min(d)))
            .collect();
        if bounds.iter().any(|(lo, hi)| lo > hi) {
            None
        } else {
            Some(SupportWindow { bounds })
        }
    }

    /// Smallest box containing both.
    pub fn hull(&self, other: &SupportWindow) -> SupportWindow {
        SupportWindow {
            bounds: self
                .bounds
                .iter()
                .zip(&other.bounds)
                .map(|(&(a, b), &(c, d))| (a.min(c), b.max(d)))
                .collect(),
        }
    }

    /// Minkowski erosion by the box `[p_lo, p_hi]`: the set of `x` such that
    /// `x - u` stays inside `self` for every `u` in the box.
    pub fn erode(&self, p_lo: &[Coord], p_hi: &[Coord]) -> Option<SupportWindow> {
        let bounds: Vec<(Coord, Coord)> = self
            .bounds
            .iter()
            .enumerate()
            .map(|(i, &(lo, hi))| (lo + p_hi[i], hi + p_lo[i]))
            .collect();
        if bounds.iter().any(|(lo, hi)| lo > hi) {
            None
        } else {
            Some(SupportWindow { bounds })
        }
    }

    /// Minkowski dilation by the box `[p_lo, p_hi]`.
    pub fn dilate(&self, p_lo: &[Coord], p_hi: &[Coord]) -> SupportWindow {
        SupportWindow {
            bounds: self
                .bounds
                .iter()
                .enumerate()
                .map(|(i, &(lo, hi))| (lo + p_lo[i], hi + p_hi[i]))
                .collect(),
        }
    }

    pub fn negated(&self) -> SupportWindow {
        SupportWindow {
            bounds: self.bounds.iter().map(|&(lo, hi)| (-hi, -lo)).collect(),
        }
    }

    /// All lattice points of the box, lexicographic order.
    pub fn points(&self) -> Vec<Weight> {
        let mut out = vec![Weight(vec![])];
        for &(lo, hi) in &self.bounds {
            let mut next = Vec::new();
            for w in &out {
                for c in lo..=hi {
                    let mut v = w.0.clone();
                    v.push(c);
                    next.push(Weight(v));
                }
            }
            out = next;
        }
        out
    }
}

/// Support descriptor of a series.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Support {
    /// True element of `C[Λ^{1/2}]`; all coefficients are exact.
    Finite,
    /// Truncation of an unbounded series; `exact = None` means the
    /// certificate is empty (nothing can be certified).
    Window {
        window: SupportWindow,
        exact: Option<SupportWindow>,
    },
}

/// Sparse series: weight → exact rational, no stored zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalSeries {
    terms: BTreeMap<Weight, Rat>,
    support: Support,
    dim: usize,
}

impl fmt::Debug for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[")?;
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·{:?}", c, w)?;
        }
        write!(f, "]")
    }
}

impl FormalSeries {
    pub fn zero(dim: usize) -> FormalSeries {
        FormalSeries {
            terms: BTreeMap::new(),
            support: Support::Finite,
            dim,
        }
    }

    pub fn zero_on(dim: usize, window: SupportWindow) -> FormalSeries {
        FormalSeries {
            terms: BTreeMap::new(),
            support: Support::Window {
                exact: Some(window.clone()),
                window,
            },
            dim,
        }
    }

    pub fn one(dim: usize) -> FormalSeries {
        FormalSeries::monomial(Weight::zero(dim), Rat::from_integer(1.into()))
    }

    pub fn monomial(w: Weight, c: Rat) -> FormalSeries {
        let dim = w.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FormalSeries {
            terms,
            support: Support::Finite,
            dim,
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, Rat)>>(dim: usize, iter: I) -> FormalSeries {
        let mut s = FormalSeries::zero(dim);
        for (w, c) in iter {
            s.add_term(w, c);
        }
        s
    }

    /// Window series built from a closed form: the constructor vouches for
    /// every coefficient on the whole box.
    pub fn from_closed_form<I: IntoIterator<Item = (Weight, Rat)>>(
        dim: usize,
        window: SupportWindow,
        iter: I,
    ) -> FormalSeries {
        let mut terms = BTreeMap::new();
        for (w, c) in iter {
            if c.is_zero() || !window.contains(&w) {
                continue;
            }
            let entry = terms.entry(w).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        FormalSeries {
            terms,
            support: Support::Window {
                exact: Some(window.clone()),
                window,
            },
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.support, Support::Finite)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Weight) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, w: Weight, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// Declares window support. Stored terms outside the box are dropped so
    /// the support invariant holds.
    pub fn set_window_support(&mut self, window: SupportWindow, exact: Option<SupportWindow>) {
        self.terms.retain(|w, _| window.contains(w));
        self.support = Support::Window { window, exact };
    }

    /// The exact-region certificate: `None` for a window series whose
    /// certificate is empty; `Finite` series are exact everywhere.
    pub fn exact_window(&self) -> Option<&SupportWindow> {
        match &self.support {
            Support::Finite => None, // exact everywhere, callers treat Finite specially
            Support::Window { exact, .. } => exact.as_ref(),
        }
    }

    pub fn certifies(&self, w: &SupportWindow) -> bool {
        match &self.support {
            Support::Finite => true,
            Support::Window { exact, .. } => {
                exact.as_ref().map(|e| e.contains_window(w)).unwrap_or(false)
            }
        }
    }

    /// Bounding box of the stored support; `None` when there are no terms.
    pub fn support_bbox(&self) -> Option<(Vec<Coord>, Vec<Coord>)> {
        let mut lo: Option<Vec<Coord>> = None;
        let mut hi: Option<Vec<Coord>> = None;
        for w in self.terms.keys() {
            match (&mut lo, &mut hi) {
                (Some(l), Some(h)) => {
                    for i in 0..w.0.len() {
                        l[i] = l[i].min(w.0[i]);
                        h[i] = h[i].max(w.0[i]);
                    }
                }
                _ => {
                    lo = Some(w.0.clone());
                    hi = Some(w.0.clone());
                }
            }
        }
        lo.zip(hi)
    }

    pub fn neg(&self) -> FormalSeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> FormalSeries {
        if k.is_zero() {
            let mut out = self.clone();
            out.terms.clear();
            return out;
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.clone() * k;
        }
        out
    }
}

/// Coefficientwise sum. `Finite + Finite = Finite`; for window operands the
/// result's certificate is the intersection of the inputs' certificates.
pub fn add(a: &FormalSeries, b: &FormalSeries) -> FormalSeries {
    debug_assert_eq!(a.dim, b.dim);
    let mut terms = a.terms.clone();
    for (w, c) in &b.terms {
        let entry = terms.entry(w.clone()).or_insert_with(Rat::zero);
        *entry += c.clone();
    }
    terms.retain(|_, c| !c.is_zero());
    let support = match (&a.support, &b.support) {
        (Support::Finite, Support::Finite) => Support::Finite,
        (Support::Finite, Support::Window { window, exact }) => Support::Window {
            window: widen_for(window, a),
            exact: exact.clone(),
        },
        (Support::Window { window, exact }, Support::Finite) => Support::Window {
            window: widen_for(window, b),
            exact: exact.clone(),
        },
        (
            Support::Window { window: wa, exact: ea },
            Support::Window { window: wb, exact: eb },
        ) => Support::Window {
            window: wa.hull(wb),
            exact: match (ea, eb) {
                (Some(x), Some(y)) => x.intersect(y),
                _ => None,
            },
        },
    };
    FormalSeries {
        terms,
        support,
        dim: a.dim,
    }
}

fn widen_for(window: &SupportWindow, finite: &FormalSeries) -> SupportWindow {
    match finite.support_bbox() {
        Some((lo, hi)) => window.hull(&SupportWindow {
            bounds: lo.into_iter().zip(hi).collect(),
        }),
        None => window.clone(),
    }
}

pub fn sub(a: &FormalSeries, b: &FormalSeries) -> FormalSeries {
    add(a, &b.neg())
}

/// Module action of `C[Λ^{1/2}]` on series: convolution of a finite
/// polynomial `p` with `s`. The certificate of `s` is eroded by the support
/// box of `p`. Multiplying two non-finite series is unsupported (the module
/// structure is only partial).
pub fn mul_poly_series(p: &FormalSeries, s: &FormalSeries) -> Result<FormalSeries> {
    if !p.is_finite() {
        if s.is_finite() {
            return mul_poly_series(s, p);
        }
        return Err(Error::Unsupported(
            "product of two non-finite series is undefined".into(),
        ));
    }
    debug_assert_eq!(p.dim, s.dim);
    let mut terms: BTreeMap<Weight, Rat> = BTreeMap::new();
    for (u, cu) in &p.terms {
        for (v, cv) in &s.terms {
            let w = u + v;
            let entry = terms.entry(w).or_insert_with(Rat::zero);
            *entry += cu.clone() * cv.clone();
        }
    }
    terms.retain(|_, c| !c.is_zero());
    let support = match &s.support {
        Support::Finite => Support::Finite,
        Support::Window { window, exact } => {
            let (p_lo, p_hi) = match p.support_bbox() {
                Some(b) => b,
                None => (vec![0; p.dim], vec![0; p.dim]), // p = 0
            };
            Support::Window {
                window: window.dilate(&p_lo, &p_hi),
                exact: exact.as_ref().and_then(|e| e.erode(&p_lo, &p_hi)),
            }
        }
    };
    Ok(FormalSeries {
        terms,
        support,
        dim: s.dim,
    })
}

/// Chamber split along a root: `m_plus` holds the terms with `⟨μ, α⟩ ≥ 0`
/// (ties go to the plus part), `m_minus` the rest; `m_plus + m_minus = m`.
pub fn split_by_root(
    m: &FormalSeries,
    alpha: &Weight,
    datum: &RootDatum,
) -> Result<(FormalSeries, FormalSeries)> {
    if !datum.is_root(alpha) {
        return Err(Error::NotARoot(alpha.0.clone()));
    }
    let mut plus = m.clone();
    let mut minus = m.clone();
    plus.terms.clear();
    minus.terms.clear();
    for (w, c) in &m.terms {
        if pairing(w, alpha, datum)?.is_negative() {
            minus.terms.insert(w.clone(), c.clone());
        } else {
            plus.terms.insert(w.clone(), c.clone());
        }
    }
    Ok((plus, minus))
}

/// Exact division of a finite series by `(1 − [−α])^m`. Returns `None` when
/// no finite quotient exists.
pub fn exact_divide(num: &FormalSeries, alpha: &Weight, mult: u32) -> Option<FormalSeries> {
    assert!(num.is_finite(), "exact_divide expects a finite numerator");
    let mut cur = num.clone();
    for _ in 0..mult {
        cur = divide_once(&cur, alpha)?;
    }
    Some(cur)
}

/// One division step: solves `q_x − q_{x+α} = num_x` with finite `q`.
fn divide_once(num: &FormalSeries, alpha: &Weight) -> Option<FormalSeries> {
    if num.is_zero() {
        return Some(num.clone());
    }
    let dim = num.dim;
    let pivot = alpha.0.iter().position(|&c| c != 0)?;
    let step = alpha.0[pivot];
    // Group terms into α-lines: key = w − k·α with k = w[pivot] div step.
    let mut lines: BTreeMap<Weight, BTreeMap<Coord, Rat>> = BTreeMap::new();
    for (w, c) in &num.terms {
        let k = w.0[pivot].div_euclid(step);
        let base = w - &alpha.scaled(k);
        lines.entry(base).or_default().insert(k, c.clone());
    }
    let mut out = FormalSeries::zero(dim);
    for (base, line) in lines {
        let &kmax = line.keys().max().unwrap();
        let &kmin = line.keys().min().unwrap();
        let mut suffix = Rat::zero();
        for k in (kmin..=kmax).rev() {
            if let Some(c) = line.get(&k) {
                suffix += c.clone();
            }
            if !suffix.is_zero() {
                out.add_term(&base + &alpha.scaled(k), suffix.clone());
            }
        }
        // Below the bottom of the line the quotient must vanish.
        if !suffix.is_zero() {
            return None;
        }
    }
    Some(out)
}

/// Weight-negation involution; boxes are reflected.
pub fn dual(s: &FormalSeries) -> FormalSeries {
    let terms: BTreeMap<Weight, Rat> =
        s.terms.iter().map(|(w, c)| (-w, c.clone())).collect();
    let support = match &s.support {
        Support::Finite => Support::Finite,
        Support::Window { window, exact } => Support::Window {
            window: window.negated(),
            exact: exact.as_ref().map(|e| e.negated()),
        },
    };
    FormalSeries {
        terms,
        support,
        dim: s.dim,
    }
}

/// Certified comparison: requires `w` inside the exact region of both sides,
/// then compares all coefficients on `w`.
pub fn equal_on_window(a: &FormalSeries, b: &FormalSeries, w: &SupportWindow) -> Result<bool> {
    if !a.certifies(w) || !b.certifies(w) {
        return Err(Error::Uncertifiable(
            "comparison window exceeds an exact region".into(),
        ));
    }
    for (wt, c) in &a.terms {
        if w.contains(wt) && b.coeff(wt) != *c {
            return Ok(false);
        }
    }
    for (wt, c) in &b.terms {
        if w.contains(wt) && a.coeff(wt) != *c {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Restriction of stored terms to a box, with full exactness demanded from
/// the input on that box.
pub fn restrict_to_window(s: &FormalSeries, w: &SupportWindow) -> Result<FormalSeries> {
    if !s.certifies(w) {
        return Err(Error::Uncertifiable(
            "restriction window exceeds the exact region".into(),
        ));
    }
    let terms: BTreeMap<Weight, Rat> = s
        .terms
        .iter()
        .filter(|(wt, _)| w.contains(wt))
        .map(|(wt, c)| (wt.clone(), c.clone()))
        .collect();
    Ok(FormalSeries {
        terms,
        support: Support::Window {
            window: w.clone(),
            exact: Some(w.clone()),
        },
        dim: s.dim,
    })
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

/// Serializes to the published schema:
/// `{"terms":[{"w":[...],"c":"p/q"},...],"support":{"kind":...}}`
/// with terms in lexicographic coordinate order.
pub fn to_json(s: &FormalSeries) -> serde_json::Value {
    use serde_json::json;
    let terms: Vec<serde_json::Value> = s
        .terms
        .iter()
        .map(|(w, c)| json!({"w": w.0, "c": c.to_string()}))
        .collect();
    let support = match &s.support {
        Support::Finite => json!({"kind": "finite"}),
        Support::Window { window, exact } => json!({
            "kind": "window",
            "box": window.bounds.iter().map(|&(lo, hi)| vec![lo, hi]).collect::<Vec<_>>(),
            "exact": exact.as_ref().map(|e| {
                e.bounds.iter().map(|&(lo, hi)| vec![lo, hi]).collect::<Vec<_>>()
            }),
        }),
    };
    json!({"terms": terms, "support": support})
}

pub fn from_json(v: &serde_json::Value) -> Result<FormalSeries> {
    let bad = |m: &str| Error::Parse(format!("series json: {m}"));
    let terms_v = v
        .get("terms")
        .and_then(|t| t.as_array())
        .ok_or_else(|| bad("missing terms"))?;
    let mut dim = None;
    let mut terms = Vec::new();
    for t in terms_v {
        let w: Vec<Coord> = t
            .get("w")
            .and_then(|x| serde_json::from_value(x.clone()).ok())
            .ok_or_else(|| bad("bad weight"))?;
        let c = t
            .get("c")
            .and_then(|x| x.as_str())
            .ok_or_else(|| bad("bad coefficient"))?;
        dim.get_or_insert(w.len());
        terms.push((Weight(w), crate::lattice::parse_rat(c)?));
    }
    let support_v = v.get("support").ok_or_else(|| bad("missing support"))?;
    let kind = support_v
        .get("kind")
        .and_then(|k| k.as_str())
        .ok_or_else(|| bad("missing support kind"))?;
    let parse_box = |key: &str| -> Result<Option<SupportWindow>> {
        match support_v.get(key) {
            None | Some(serde_json::Value::Null) => Ok(None),
            Some(b) => {
                let raw: Vec<Vec<Coord>> = serde_json::from_value(b.clone())
                    .map_err(|_| bad("bad box"))?;
                let bounds = raw
                    .into_iter()
                    .map(|p| {
                        if p.len() == 2 {
                            Ok((p[0], p[1]))
                        } else {
                            Err(bad("box entry is not a pair"))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Some(SupportWindow::new(bounds)?))
            }
        }
    };
    match kind {
        "finite" => {
            let dim = dim.unwrap_or(0);
            Ok(FormalSeries::from_terms(dim, terms))
        }
        "window" => {
            let window = parse_box("box")?.ok_or_else(|| bad("window without box"))?;
            let exact = parse_box("exact")?;
            let dim = dim.unwrap_or(window.dim());
            let mut s = FormalSeries::from_terms(dim, terms);
            s.support = Support::Window { window, exact };
            Ok(s)
        }
        other => Err(bad(&format!("unknown support kind `{other}`"))),
    }
}
