//! Worked branching problems and regularity-condition checkers: tensor
//! products and restrictions of `(sl2, SO(2))`-modules, the SO(3)-in-GL(3)
//! kernel analysis with its two generators, and the strip conditions that
//! certify disjointness from the localization kernel.
//!
//! Modules are encoded by closed-form K-type multiplicity functions plus
//! character fractions; all computations happen at the character and K-type
//! level with certificates on named windows.

use num_traits::{Signed, Zero};

use crate::charring::{frac_add, frac_mul, CharacterFraction};
use crate::error::{Error, Result};
use crate::kernel::{self, KernelGenerator};
use crate::lattice::{make_root_datum, pairing, NamedSystem, RootDatum, Weight};
use crate::series::{self, FormalSeries, SupportWindow};
use crate::weyl::{tau_subgroup, trivial_subgroup, WeylElement};
use crate::{rat, rat_frac, Coord, Rat};

/// The rank-1 datum of the `(sl2, SO(2))` setting; K-types live at
/// coordinate `c` for the `SO(2)`-weight `c/2 · α`.
pub fn sl2_datum() -> RootDatum {
    make_root_datum(NamedSystem::A1)
}

fn alpha1() -> Weight {
    Weight(vec![2])
}

/// Closed-form `(sl2, SO(2))`-module kinds, with K-type multiplicity
/// functions on `(1/2)Z·α` and character fractions where defined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2Module {
    /// Discrete series with lowest `SO(2)`-type `m/2 · α`, `m ≥ 2`.
    DiscreteSeries(u32),
    /// Limit of discrete series with lowest type `±α/2`.
    LimitDs(i8),
    /// Principal series with K-types `(2k+δ)/2 · α`, `δ ∈ {0, 1}`.
    PrincipalSeries(u8),
    /// Finite-dimensional module of dimension `n+1`.
    FiniteDim(u32),
}

impl Sl2Module {
    /// K-type multiplicity at coordinate `c` (the weight `c/2 · α`).
    pub fn ktype_multiplicity(&self, c: Coord) -> u32 {
        let matches = match self {
            Sl2Module::DiscreteSeries(m) => {
                let m = *m as i64;
                c >= m && (c - m) % 2 == 0
            }
            Sl2Module::LimitDs(sign) => {
                if *sign > 0 {
                    c >= 1 && c % 2 != 0
                } else {
                    c <= -1 && c % 2 != 0
                }
            }
            Sl2Module::PrincipalSeries(delta) => c.rem_euclid(2) == *delta as i64,
            Sl2Module::FiniteDim(n) => {
                let n = *n as i64;
                c.abs() <= n && (c - n) % 2 == 0
            }
        };
        matches as u32
    }

    /// K-type multiplicity series, exact on the window.
    pub fn ktype_series(&self, window: &SupportWindow) -> FormalSeries {
        let (lo, hi) = window.bounds[0];
        FormalSeries::from_closed_form(
            1,
            window.clone(),
            (lo..=hi).filter_map(|c| {
                let m = self.ktype_multiplicity(c);
                (m > 0).then(|| (Weight(vec![c]), rat(m as i64)))
            }),
        )
    }

    /// Character fraction in `T = [α]`, in the canonical `(1 − [−α])` form:
    /// the Euler numerator over the single denominator factor. Principal
    /// series map to zero in the localization.
    pub fn character_fraction(&self) -> CharacterFraction {
        CharacterFraction::new(
            self.h_numerator(),
            [(alpha1(), 1)].into_iter().collect(),
        )
    }

    /// The Euler-characteristic numerator `W_q · c_q(X)` before any
    /// cancellation (the canonical fraction of a finite-dimensional class
    /// reduces completely, so its `numerator` field is the full character;
    /// this is the two-term form instead).
    pub fn h_numerator(&self) -> FormalSeries {
        match self {
            Sl2Module::DiscreteSeries(m) => {
                FormalSeries::monomial(Weight(vec![*m as i64 - 2]), rat(-1))
            }
            Sl2Module::LimitDs(sign) => FormalSeries::monomial(
                Weight(vec![-1]),
                if *sign > 0 { rat(-1) } else { rat(1) },
            ),
            Sl2Module::PrincipalSeries(_) => FormalSeries::zero(1),
            Sl2Module::FiniteDim(n) => {
                let n = *n as i64;
                series::sub(
                    &FormalSeries::monomial(Weight(vec![n]), rat(1)),
                    &FormalSeries::monomial(Weight(vec![-n - 2]), rat(1)),
                )
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Sl2Module::DiscreteSeries(m) => format!("D_{m}"),
            Sl2Module::LimitDs(s) => format!("D_{}", if *s > 0 { "1" } else { "-1" }),
            Sl2Module::PrincipalSeries(d) => format!("P_{d}"),
            Sl2Module::FiniteDim(n) => format!("F_{n}"),
        }
    }
}

/// `T^{c/2} / (1 − T)^e` as a canonical fraction over `(1 − [−α])^e`
/// (coordinates: `T^{c/2} = [c]`, so `c` is the `α^{1/2}`-coordinate).
pub fn fraction_t_power(c: Coord, e: u32) -> CharacterFraction {
    let sign = if e % 2 == 0 { rat(1) } else { rat(-1) };
    CharacterFraction::new(
        FormalSeries::monomial(Weight(vec![c - 2 * e as i64]), sign),
        [(alpha1(), e)].into_iter().collect(),
    )
}

/// One term of a branching answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingTerm {
    pub label: String,
    pub multiplicity: u32,
}

/// Closed form of an infinite family `D_{base + step·k}, k ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchematicFamily {
    pub base: i64,
    pub step: i64,
    pub mult: u32,
}

/// Branching answer: explicit leading terms, the closed-form family they
/// instantiate, the verification window, and the certificate identifier.
#[derive(Clone, Debug)]
pub struct BranchingResult {
    pub terms: Vec<BranchingTerm>,
    pub family: Option<SchematicFamily>,
    pub window: SupportWindow,
    pub certificate: String,
}

impl BranchingResult {
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        json!({
            "terms": self.terms.iter()
                .map(|t| json!({"label": t.label, "mult": t.multiplicity}))
                .collect::<Vec<_>>(),
            "family": self.family.as_ref().map(|f| json!({
                "base": f.base, "step": f.step, "mult": f.mult,
            })),
            "window": self.window.bounds.iter()
                .map(|&(lo, hi)| vec![lo, hi]).collect::<Vec<_>>(),
            "certificate": self.certificate,
        })
    }
}

/// Tensor product of two discrete series: `D_m ⊗ D_n = ⊕_k D_{m+n+2k}`,
/// each with multiplicity one. Certified two ways: the cross-multiplied
/// fraction identity for the first `terms` summands, and the K-type
/// convolution oracle on the window `[0, 30]·α`.
pub fn sl2_tensor_discrete(m: u32, n: u32, terms: usize) -> Result<BranchingResult> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument(
            "discrete-series tensor certificates need lowest types m, n ≥ 2".into(),
        ));
    }
    let window = SupportWindow::new(vec![(0, 60)])?;
    let dm = Sl2Module::DiscreteSeries(m);
    let dn = Sl2Module::DiscreteSeries(n);

    // (a) fraction identity: c(D_m)·c(D_n) − Σ_{k<K} c(D_{m+n+2k}) equals
    // the remainder T^{(m+n+2K)/2}/(1−T)².
    let product = frac_mul(&dm.character_fraction(), &dn.character_fraction())?;
    let count = terms.max(1);
    let mut partial = CharacterFraction::zero(1);
    for k in 0..count {
        let f = fraction_t_power(m as i64 + n as i64 + 2 * k as i64, 1);
        partial = frac_add(&partial, &f)?;
    }
    let remainder = fraction_t_power(m as i64 + n as i64 + 2 * count as i64, 2);
    let rhs = frac_add(&partial, &remainder)?;
    if !product.equals(&rhs)? {
        return Err(Error::InvalidArgument(
            "internal: fraction certificate failed".into(),
        ));
    }

    // (b) K-type convolution oracle on the window.
    let conv = convolve_lowest_bounded(&dm, &dn, &window)?;
    let hi = window.bounds[0].1;
    let mut sum = FormalSeries::zero(1);
    let mut k = 0i64;
    while m as i64 + n as i64 + 2 * k <= hi {
        let d = Sl2Module::DiscreteSeries((m as i64 + n as i64 + 2 * k) as u32);
        sum = series::add(&sum, &d.ktype_series(&window));
        k += 1;
    }
    if !series::equal_on_window(&conv, &sum, &window)? {
        return Err(Error::InvalidArgument(
            "internal: K-type convolution certificate failed".into(),
        ));
    }

    Ok(BranchingResult {
        terms: (0..count)
            .map(|k| BranchingTerm {
                label: format!("D_{}", m as usize + n as usize + 2 * k),
                multiplicity: 1,
            })
            .collect(),
        family: Some(SchematicFamily {
            base: m as i64 + n as i64,
            step: 2,
            mult: 1,
        }),
        window,
        certificate: "fraction-identity+ktype-convolution".into(),
    })
}

/// Convolution of two lowest-bounded K-type multiplicity functions, exact on
/// the window: every contributing pair is enumerated because both supports
/// are bounded below.
fn convolve_lowest_bounded(
    a: &Sl2Module,
    b: &Sl2Module,
    window: &SupportWindow,
) -> Result<FormalSeries> {
    let lowest = |m: &Sl2Module| -> Result<Coord> {
        match m {
            Sl2Module::DiscreteSeries(k) => Ok(*k as i64),
            Sl2Module::LimitDs(1) => Ok(1),
            Sl2Module::FiniteDim(n) => Ok(-(*n as i64)),
            _ => Err(Error::Unsupported(
                "convolution needs lowest-bounded K-type functions".into(),
            )),
        }
    };
    let (la, lb) = (lowest(a)?, lowest(b)?);
    let hi = window.bounds[0].1;
    let mut out: Vec<(Weight, Rat)> = Vec::new();
    for ca in la..=(hi - lb) {
        let ma = a.ktype_multiplicity(ca);
        if ma == 0 {
            continue;
        }
        for cb in lb..=(hi - ca) {
            let mb = b.ktype_multiplicity(cb);
            if mb == 0 {
                continue;
            }
            out.push((Weight(vec![ca + cb]), rat((ma * mb) as i64)));
        }
    }
    Ok(FormalSeries::from_closed_form(1, window.clone(), out))
}

/// Restriction of a principal series to `SO(2)`: the bilateral K-type family
/// `(2k+δ)/2 · α`, with two certificates on the eroded window: annihilation
/// by `(1 − [−α])`, and equality with the shifted kernel generator
/// `α^{(δ−1)/2}·y_α^{(1)}`.
pub fn sl2_principal_restriction(delta: u8, window: &SupportWindow) -> Result<BranchingResult> {
    if delta > 1 {
        return Err(Error::InvalidArgument("delta must be 0 or 1".into()));
    }
    let pi = Sl2Module::PrincipalSeries(delta);
    let iota = pi.ktype_series(window);
    let alpha = alpha1();

    let one_minus = series::sub(
        &FormalSeries::one(1),
        &FormalSeries::monomial(Weight(vec![-2]), rat(1)),
    );
    let killed = series::mul_poly_series(&one_minus, &iota)?;
    // multiplication by (1 − [−α]) reads upward, eroding the top
    let eroded = SupportWindow::new(vec![(window.bounds[0].0, window.bounds[0].1 - 2)])?;
    if !series::equal_on_window(&killed, &FormalSeries::zero(1), &eroded)? {
        return Err(Error::InvalidArgument(
            "internal: annihilation certificate failed".into(),
        ));
    }

    let y1 = kernel::y_uni(&alpha, 1, window)?;
    let shift = FormalSeries::monomial(Weight(vec![delta as i64 - 1]), rat(1));
    let shifted = series::mul_poly_series(&shift, &y1)?;
    let inner = SupportWindow::new(vec![(
        window.bounds[0].0 + 1,
        window.bounds[0].1 - 1,
    )])?;
    if !series::equal_on_window(&shifted, &iota, &inner)? {
        return Err(Error::InvalidArgument(
            "internal: kernel-generator certificate failed".into(),
        ));
    }

    Ok(BranchingResult {
        terms: vec![BranchingTerm {
            label: format!("SO(2)-weights (2k+{delta})/2·α, k ∈ Z"),
            multiplicity: 1,
        }],
        family: Some(SchematicFamily {
            base: delta as i64,
            step: 2,
            mult: 1,
        }),
        window: window.clone(),
        certificate: "denominator-annihilation+kernel-generator-match".into(),
    })
}

/// The combination of the two limit-of-discrete-series classes that is
/// annihilated by `(1 − [−α])`: the two chamber families enter the
/// Grothendieck combination with their Weyl signs, so as a plain K-type
/// series this is `ι(D_1) + ι(D_{−1})`, the δ = 1 principal-series class.
pub fn limit_ds_kernel_class(window: &SupportWindow) -> FormalSeries {
    let d1 = Sl2Module::LimitDs(1).ktype_series(window);
    let dm1 = Sl2Module::LimitDs(-1).ktype_series(window);
    series::add(&d1, &dm1)
}

/// Verifies the limit-of-discrete-series annihilation certificate on the
/// eroded window and returns the eroded window it certified.
pub fn verify_limit_ds_annihilation(window: &SupportWindow) -> Result<SupportWindow> {
    let class = limit_ds_kernel_class(window);
    let one_minus = series::sub(
        &FormalSeries::one(1),
        &FormalSeries::monomial(Weight(vec![-2]), rat(1)),
    );
    let killed = series::mul_poly_series(&one_minus, &class)?;
    let eroded = SupportWindow::new(vec![(window.bounds[0].0, window.bounds[0].1 - 2)])?;
    if series::equal_on_window(&killed, &FormalSeries::zero(1), &eroded)? {
        Ok(eroded)
    } else {
        Err(Error::InvalidArgument(
            "limit-of-discrete-series class is not annihilated".into(),
        ))
    }
}

// ---------------------------------------------------------------------------
// SO(3)-in-GL(3)
// ---------------------------------------------------------------------------

/// Report of the SO(3)-in-GL(3) kernel computation: the two generating
/// series in the `SO(3)`-class basis, the coordinates of the four displayed
/// kernel elements in their span, and the two thresholds for the minimal
/// `SO(3)`-type.
#[derive(Clone, Debug)]
pub struct So3KernelReport {
    /// Coefficients of `κ₁` at `Z_{k·α}`, `k = 0, 1, …`.
    pub kappa1: Vec<Rat>,
    /// Coefficients of `κ₂` at `Z_{k·α}`.
    pub kappa2: Vec<Rat>,
    /// `(name, x, y)` with `g = x·κ₁ + y·κ₂` for each displayed generator.
    pub generator_coordinates: Vec<(String, Rat, Rat)>,
    pub window: SupportWindow,
    /// Minimal `a` such that a module whose `SO(3)`-types all sit at
    /// `Z_{a'·α}, a' ≥ a` is disjoint from the kernel span.
    pub disjointness_threshold: i64,
    /// Minimal `a` passing the strip condition for the minimal type `a·α`.
    pub condition_s_threshold: i64,
}

impl So3KernelReport {
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        json!({
            "kappa1": self.kappa1.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "kappa2": self.kappa2.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "generators": self.generator_coordinates.iter()
                .map(|(n, x, y)| json!({"name": n, "kappa1": x.to_string(), "kappa2": y.to_string()}))
                .collect::<Vec<_>>(),
            "window": self.window.bounds.iter().map(|&(lo, hi)| vec![lo, hi]).collect::<Vec<_>>(),
            "disjointness_threshold": self.disjointness_threshold,
            "condition_s_threshold": self.condition_s_threshold,
        })
    }
}

/// Folds an antisymmetric (τ-odd) rank-1 series into `SO(3)`-class
/// coordinates: the class `Z_{k·α}` corresponds to the numerator pair
/// `±(2k+1)` after the `−α/2` shift. Errors when the series is not τ-odd on
/// the fold range.
pub fn tau_odd_fold(s: &FormalSeries, max_k: i64) -> Result<Vec<Rat>> {
    let mut out = Vec::new();
    for k in 0..=max_k {
        let plus = s.coeff(&Weight(vec![2 * k + 1]));
        let minus = s.coeff(&Weight(vec![-(2 * k + 1)]));
        if plus != -minus.clone() {
            return Err(Error::InvalidArgument(format!(
                "series is not antisymmetric at ±{}",
                2 * k + 1
            )));
        }
        out.push(plus);
    }
    Ok(out)
}

/// Computes the four displayed kernel generators of the BC1 problem after
/// the `−α/2` shift and τ-projection, folds them into the `SO(3)`-class
/// basis, identifies `κ₁` and `κ₂`, and certifies that all four lie in
/// their span with exact coordinates.
pub fn so3_kernel_generators(window: &SupportWindow) -> Result<So3KernelReport> {
    let alpha = Weight(vec![2]);
    let two_alpha = Weight(vec![4]);
    let (lo, hi) = window.bounds[0];
    // the fold needs k ≤ 20 after the erosions of the d-products
    if lo > -44 || hi < 44 {
        return Err(Error::Uncertifiable(
            "window too small for a certified rank computation; need ±44".into(),
        ));
    }

    let y_a2 = kernel::y_uni(&alpha, 2, window)?;
    let y_2a1 = kernel::y_uni(&two_alpha, 1, window)?;
    let y_2a2 = kernel::y_uni(&two_alpha, 2, window)?;
    let y_pair = kernel::y_multi(&[alpha.clone(), two_alpha.clone()], &[1, 1], window)?;

    let g1 = series::mul_poly_series(&kernel::d_plus(&alpha)?, &y_a2)?;
    let g2 = series::mul_poly_series(&kernel::d_minus(&alpha)?, &y_2a1)?;
    let g3 = series::mul_poly_series(&kernel::d_plus(&alpha)?, &y_2a2)?;
    let g4 = y_pair;

    // τ-projection sanity: all four are in the (−1)-eigenspace of τ
    let tau = &tau_subgroup()[1];
    let inner = SupportWindow::new(vec![(lo + 1, hi - 1)])?;
    for (name, g) in [("g1", &g1), ("g2", &g2), ("g3", &g3), ("g4", &g4)] {
        let reflected = crate::weyl::act_on_series(tau, g);
        if !series::equal_on_window(&reflected, &g.neg(), &inner)? {
            return Err(Error::InvalidArgument(format!(
                "generator {name} is not τ-antisymmetric"
            )));
        }
    }

    let max_k = 20;
    let folds = [
        ("d_{a,+} y_a^(2)", tau_odd_fold(&g1, max_k)?),
        ("d_{a,-} y_{2a}^(1)", tau_odd_fold(&g2, max_k)?),
        ("d_{a,+} y_{2a}^(2)", tau_odd_fold(&g3, max_k)?),
        ("y_{(a,2a)}^(1,1)", tau_odd_fold(&g4, max_k)?),
    ];
    let kappa1 = folds[0].1.clone();
    let kappa2 = folds[3].1.clone();

    // κ₁, κ₂ linearly independent on the fold range
    let matrix: Vec<Vec<Rat>> = (0..=max_k as usize)
        .map(|k| vec![kappa1[k].clone(), kappa2[k].clone()])
        .collect();
    if kernel::linalg::rank(&matrix) != 2 {
        return Err(Error::RankDeficient);
    }

    let mut generator_coordinates = Vec::new();
    for (name, fold) in &folds {
        let coords = kernel::linalg::solve_least(&matrix, fold)
            .ok_or_else(|| Error::InvalidArgument(format!("{name} not in span")))?;
        generator_coordinates.push((name.to_string(), coords[0].clone(), coords[1].clone()));
    }

    // Disjointness threshold: minimal a with trivial null space of the
    // restriction of (κ₁, κ₂) to the classes Z_0 … Z_{a−1}.
    let mut disjointness_threshold = -1;
    for a in 1..=(max_k as usize) {
        let sub: Vec<Vec<Rat>> = matrix[..a].to_vec();
        if kernel::linalg::rank(&sub) == 2 {
            disjointness_threshold = a as i64;
            break;
        }
    }
    if disjointness_threshold < 0 {
        return Err(Error::RankDeficient);
    }

    let condition_s_threshold = so3_condition_s_threshold()?;

    Ok(So3KernelReport {
        kappa1,
        kappa2,
        generator_coordinates,
        window: window.clone(),
        disjointness_threshold,
        condition_s_threshold,
    })
}

/// Minimal `a` such that the strip condition holds for a module with
/// minimal `SO(3)`-type `a·α`, in the constant-multiplicity-bound
/// instantiation of the BC1 problem (strip roots `{α, 2α}`, empty count
/// set, `λ0 = −α/2`, Weyl group `{1, τ}`).
pub fn so3_condition_s_threshold() -> Result<i64> {
    let datum = make_root_datum(NamedSystem::Bc1);
    let scope = RegularityScope {
        datum: &datum,
        strip_roots: vec![Weight(vec![2]), Weight(vec![4])],
        count_roots: vec![],
        weyl: tau_subgroup(),
    };
    let lambda0 = Weight(vec![-1]);
    for a in 0..=10 {
        let ktypes = vec![(Weight(vec![2 * a]), 1u32)];
        if condition_s_check(&ktypes, &lambda0, &scope)?.holds {
            return Ok(a);
        }
    }
    Err(Error::InvalidArgument(
        "no strip threshold found below a = 10".into(),
    ))
}

// ---------------------------------------------------------------------------
// Conditions (S) and (S')
// ---------------------------------------------------------------------------

/// The root data a strip condition quantifies over.
pub struct RegularityScope<'a> {
    pub datum: &'a RootDatum,
    /// Deduplicated strip roots (the `β` that get numbered).
    pub strip_roots: Vec<Weight>,
    /// Roots counted by the power-sum bound (empty means all powers vanish).
    pub count_roots: Vec<Weight>,
    /// The compact Weyl group acting on the parameters.
    pub weyl: Vec<WeylElement>,
}

/// One failing tuple of a strip condition.
#[derive(Clone, Debug)]
pub struct StripViolation {
    pub lambda: Weight,
    pub weyl_index: usize,
    pub beta1: Weight,
    pub powers: Vec<u32>,
    pub lhs: Rat,
    pub rhs: Rat,
}

/// Result of a strip-condition check, with the admissible power-sum caps
/// per subset of strip roots (each cap is linear in the exponent `b`).
#[derive(Debug)]
pub struct StripReport {
    pub holds: bool,
    pub violations: Vec<StripViolation>,
    /// `(subset indices, cap)` rows of the power-sum bound.
    pub nsum_caps: Vec<(Vec<usize>, u32)>,
}

fn subset_cap(
    subset: &[usize],
    scope: &RegularityScope,
    multiplier: u32,
) -> Result<u32> {
    let mut count = 0;
    for gamma in &scope.count_roots {
        let touched = subset.iter().any(|&i| {
            pairing(&scope.strip_roots[i], gamma, scope.datum)
                .map(|p| !p.is_zero())
                .unwrap_or(false)
        });
        if touched {
            count += 1;
        }
    }
    Ok(multiplier * count)
}

fn admissible_power_tuples(
    scope: &RegularityScope,
    multiplier: u32,
) -> Result<(Vec<Vec<u32>>, Vec<(Vec<usize>, u32)>)> {
    let r = scope.strip_roots.len();
    let mut caps = Vec::new();
    for mask in 1u32..(1 << r) {
        let subset: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
        let cap = subset_cap(&subset, scope, multiplier)?;
        caps.push((subset, cap));
    }
    let per_root: Vec<u32> = (0..r)
        .map(|i| {
            caps.iter()
                .find(|(s, _)| s == &vec![i])
                .map(|(_, c)| *c)
                .unwrap_or(0)
        })
        .collect();
    // enumerate all tuples below the per-root caps, filter by subset sums
    let mut tuples = vec![Vec::new()];
    for &cap in &per_root {
        let mut next = Vec::new();
        for t in &tuples {
            for n in 0..=cap {
                let mut v = t.clone();
                v.push(n);
                next.push(v);
            }
        }
        tuples = next;
    }
    let tuples = tuples
        .into_iter()
        .filter(|t| {
            caps.iter().all(|(subset, cap)| {
                subset.iter().map(|&i| t[i]).sum::<u32>() <= *cap
            })
        })
        .collect();
    Ok((tuples, caps))
}

fn strip_check_core(
    params: &[Weight],
    shift: &Weight,
    lambda0: &Weight,
    scope: &RegularityScope,
    multiplier: u32,
) -> Result<StripReport> {
    let (tuples, caps) = admissible_power_tuples(scope, multiplier)?;
    let mut violations = Vec::new();
    let r = scope.strip_roots.len();
    for lambda in params {
        for (wi, w) in scope.weyl.iter().enumerate() {
            let moved = &w.apply(&(lambda + shift)) - lambda0;
            for b1 in 0..r {
                let beta1 = &scope.strip_roots[b1];
                for t in &tuples {
                    let lhs = pairing(&moved, beta1, scope.datum)?.abs();
                    let mut rhs = rat_frac(1, 2) * pairing(beta1, beta1, scope.datum)?;
                    for (i, beta) in scope.strip_roots.iter().enumerate() {
                        rhs += rat_frac(t[i] as i64 + 1, 2)
                            * pairing(beta1, beta, scope.datum)?;
                    }
                    if lhs < rhs {
                        violations.push(StripViolation {
                            lambda: lambda.clone(),
                            weyl_index: wi,
                            beta1: beta1.clone(),
                            powers: t.clone(),
                            lhs: lhs.clone(),
                            rhs: rhs.clone(),
                        });
                        if violations.len() >= 100 {
                            return Ok(StripReport {
                                holds: false,
                                violations,
                                nsum_caps: caps,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(StripReport {
        holds: violations.is_empty(),
        violations,
        nsum_caps: caps,
    })
}

/// Strip condition on K-type highest weights: for every K-type `λ`, every
/// `w` in the compact Weyl group, every strip root `β₁` and every admissible
/// power assignment, demands
/// `|⟨w(λ+ρ(n)) − λ0, β₁⟩| ≥ ½⟨β₁,β₁⟩ + Σ_i (n_i+1)/2·⟨β₁,β_i⟩`,
/// where the powers obey `Σ_{s∈S} n_s ≤ #{γ ∈ count : ⟨β_s, γ⟩ ≠ 0 for some
/// s ∈ S}` for every subset `S`.
pub fn condition_s_check(
    ktype_highest_weights: &[(Weight, u32)],
    lambda0: &Weight,
    scope: &RegularityScope,
) -> Result<StripReport> {
    let dim = scope.datum.rank;
    let mut two_rho_n = Weight::zero(dim);
    for gamma in &scope.count_roots {
        two_rho_n = &two_rho_n + gamma;
    }
    let rho_n = two_rho_n.half()?;
    let params: Vec<Weight> = ktype_highest_weights
        .iter()
        .filter(|(_, m)| *m > 0)
        .map(|(w, _)| w.clone())
        .collect();
    strip_check_core(&params, &rho_n, lambda0, scope, 1)
}

/// Strip condition on infinitesimal characters with the power-sum bound
/// scaled by the multiplicity-growth exponent `b`; the strip width is
/// linear in `b` through the admissible powers.
pub fn condition_sprime_check(
    inf_chars: &[Weight],
    lambda0: &Weight,
    scope: &RegularityScope,
    b: u32,
) -> Result<StripReport> {
    let dim = scope.datum.rank;
    strip_check_core(inf_chars, &Weight::zero(dim), lambda0, scope, b)
}

// ---------------------------------------------------------------------------
// Blattner recovery
// ---------------------------------------------------------------------------

/// Category data constraining a Blattner recovery.
#[derive(Clone, Debug)]
pub struct Sl2Category {
    /// Lower bound for the lowest K-type coordinate (in `α^{1/2}` units).
    pub min_ktype_coord: Option<Coord>,
    /// Known multiplicities of the sample weights `0·α` and `α/2`. Any
    /// kernel element is constant along each parity class, so these two
    /// values pin the kernel component.
    pub sample: Option<(u32, u32)>,
}

/// Outcome of a Blattner recovery.
#[derive(Debug)]
pub enum BlattnerOutcome {
    /// Unique K-type multiplicity function on the window.
    Recovered {
        ktypes: FormalSeries,
        window: SupportWindow,
    },
    /// The zero fraction plus a zero sample pins the zero function: all
    /// composition factors are discrete series.
    AllDiscreteSeries,
    /// The input is ambiguous up to the localization kernel; carries the
    /// kernel basis.
    AmbiguousUpToKernel { kernel: Vec<KernelGenerator> },
}

/// The two kernel classes that are honest multiplicity functions: all odd
/// coordinates with coefficient 1 (`y_α^{(1)}`), and all even coordinates
/// with coefficient 1 (`½·d_{α,+}y_α^{(1)}`).
fn parity_class(window: &SupportWindow, odd: bool) -> FormalSeries {
    let (lo, hi) = window.bounds[0];
    FormalSeries::from_closed_form(
        1,
        window.clone(),
        (lo..=hi).filter_map(|c| {
            (c.rem_euclid(2) == odd as i64).then(|| (Weight(vec![c]), rat(1)))
        }),
    )
}

/// Recovers the K-type multiplicity function of an `(sl2, SO(2))`-class from
/// its character fraction, using the category constraints to rule the
/// localization kernel out. The fraction's denominator must be a power of
/// the rank-1 factor.
pub fn blattner_recover(
    frac: &CharacterFraction,
    category: &Sl2Category,
    window: &SupportWindow,
) -> Result<BlattnerOutcome> {
    let datum = sl2_datum();
    let alpha = alpha1();
    for key in frac.denominator.keys() {
        if *key != alpha {
            return Err(Error::InvalidArgument(
                "recovery expects denominators in powers of the rank-1 factor".into(),
            ));
        }
    }
    if frac.is_zero() {
        return match category.sample {
            Some((0, 0)) => Ok(BlattnerOutcome::AllDiscreteSeries),
            Some((at_zero, at_half)) => {
                // the kernel component is constant on each parity class
                let even = parity_class(window, false).scale(&rat(at_zero as i64));
                let odd = parity_class(window, true).scale(&rat(at_half as i64));
                Ok(BlattnerOutcome::Recovered {
                    ktypes: series::add(&even, &odd),
                    window: window.clone(),
                })
            }
            None => {
                let kernel = kernel::kernel_basis(
                    &datum,
                    &[alpha.clone()],
                    &[1],
                    &Weight(vec![0]),
                    &[Weight(vec![0])],
                )?;
                Ok(BlattnerOutcome::AmbiguousUpToKernel { kernel })
            }
        };
    }

    // Ascending expansion: N/(1−[−α])^e = X/(1−T)^e with X = (−1)^e·N·[2e],
    // then T^c/(1−T)^e = Σ_k binom(e−1+k, e−1)·T^{c+k}. A denominator-free
    // fraction is already its own expansion.
    let e: u32 = frac.denominator.values().sum();
    let sign = if e % 2 == 0 { rat(1) } else { rat(-1) };
    let x = series::mul_poly_series(
        &FormalSeries::monomial(Weight(vec![2 * e as i64]), sign),
        &frac.numerator,
    )?;
    let hi = window.bounds[0].1;
    let mut terms: Vec<(Weight, Rat)> = Vec::new();
    for (wt, c) in x.terms() {
        let base = wt.0[0];
        if e == 0 {
            terms.push((wt.clone(), c.clone()));
            continue;
        }
        let mut k = 0i64;
        while base + 2 * k <= hi {
            terms.push((
                Weight(vec![base + 2 * k]),
                c.clone() * kernel::s_pow_coefficient(e, k),
            ));
            k += 1;
        }
    }
    let ktypes = FormalSeries::from_closed_form(1, window.clone(), terms);

    // category checks: the expansion must respect the minimal K-type bound
    // and be a genuine multiplicity function
    if let Some(min) = category.min_ktype_coord {
        for (wt, c) in ktypes.terms() {
            if wt.0[0] < min && !c.is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "expansion has a K-type at coordinate {} below the bound {}",
                    wt.0[0], min
                )));
            }
        }
    }
    for (_, c) in ktypes.terms() {
        if c.is_negative() || !c.is_integer() {
            return Err(Error::InvalidArgument(
                "expansion is not a multiplicity function".into(),
            ));
        }
    }

    // strip condition on the recovered K-types certifies uniqueness
    let scope = RegularityScope {
        datum: &datum,
        strip_roots: vec![alpha.clone()],
        count_roots: vec![],
        weyl: trivial_subgroup(1),
    };
    let ktype_list: Vec<(Weight, u32)> =
        ktypes.terms().map(|(w, _)| (w.clone(), 1)).collect();
    let report = condition_s_check(&ktype_list, &Weight(vec![-1]), &scope)?;
    if report.holds {
        if let Some((at_zero, at_half)) = category.sample {
            // a sample consistent with a strip-disjoint expansion cannot
            // carry a kernel correction
            if ktypes.coeff(&Weight(vec![0])) != rat(at_zero as i64)
                || ktypes.coeff(&Weight(vec![1])) != rat(at_half as i64)
            {
                return Err(Error::InvalidArgument(
                    "sample contradicts the strip-disjoint expansion".into(),
                ));
            }
        }
        return Ok(BlattnerOutcome::Recovered {
            ktypes,
            window: window.clone(),
        });
    }
    match category.sample {
        Some((at_zero, at_half)) => {
            // correct the kernel component using the sample: kernel
            // elements are constant along each parity class
            let diff_zero = rat(at_zero as i64) - ktypes.coeff(&Weight(vec![0]));
            let diff_half = rat(at_half as i64) - ktypes.coeff(&Weight(vec![1]));
            let corrected = series::add(
                &ktypes,
                &series::add(
                    &parity_class(window, false).scale(&diff_zero),
                    &parity_class(window, true).scale(&diff_half),
                ),
            );
            for (_, c) in corrected.terms() {
                if c.is_negative() || !c.is_integer() {
                    return Err(Error::InvalidArgument(
                        "sample correction is not a multiplicity function".into(),
                    ));
                }
            }
            Ok(BlattnerOutcome::Recovered {
                ktypes: corrected,
                window: window.clone(),
            })
        }
        None => {
            let kernel = kernel::kernel_basis(
                &datum,
                &[alpha.clone()],
                &[e.max(1)],
                &Weight(vec![0]),
                &[Weight(vec![0])],
            )?;
            Ok(BlattnerOutcome::AmbiguousUpToKernel { kernel })
        }
    }
}
