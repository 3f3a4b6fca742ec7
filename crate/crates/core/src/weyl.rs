//! Finite Weyl groups, the generalized reflection group of a root datum, the
//! sign group of the square-root extension, and their actions on weights and
//! series.

use std::collections::BTreeSet;



use crate::error::{Error, Result};
use crate::lattice::{coroot_pairing, pairing, RootDatum, Weight};
use crate::series::{FormalSeries, Support, SupportWindow};
use crate::{Coord, Rat};

/// A group element stored as an integer matrix acting on `Λ^{1/2}`
/// coordinates, together with its length.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct WeylElement {
    /// Row-major d×d matrix; the action is `w(x) = M·x`.
    pub matrix: Vec<Vec<Coord>>,
    pub length: usize,
}

impl WeylElement {
    pub fn identity(dim: usize) -> WeylElement {
        let matrix = (0..dim)
            .map(|i| (0..dim).map(|j| (i == j) as Coord).collect())
            .collect();
        WeylElement { matrix, length: 0 }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        Weight(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&w.0).map(|(m, c)| m * c).sum())
                .collect(),
        )
    }

    /// Matrix product `self ∘ other` (apply `other` first).
    pub fn compose_matrix(&self, other: &WeylElement) -> Vec<Vec<Coord>> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    /// `(−1)^{ℓ(w)}`.
    pub fn sign(&self) -> i64 {
        if self.length % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// True when the matrix has exactly one entry `±1` per row and column.
    /// Such elements map coordinate boxes to coordinate boxes.
    pub fn is_signed_permutation(&self) -> bool {
        let d = self.dim();
        let mut col_seen = vec![false; d];
        for row in &self.matrix {
            let mut hits = 0;
            for (j, &m) in row.iter().enumerate() {
                if m != 0 {
                    if m.abs() != 1 || col_seen[j] {
                        return false;
                    }
                    col_seen[j] = true;
                    hits += 1;
                }
            }
            if hits != 1 {
                return false;
            }
        }
        true
    }
}

/// Reflection in a root, as a matrix on coordinates.
pub fn reflection_matrix(alpha: &Weight, datum: &RootDatum) -> Result<WeylElement> {
    if !datum.is_root(alpha) {
        return Err(Error::NotARoot(alpha.0.clone()));
    }
    let d = datum.rank;
    let mut matrix = vec![vec![0; d]; d];
    for j in 0..d {
        let mut e = Weight::zero(d);
        e.0[j] = 1;
        let c = coroot_pairing(&e, alpha, datum)?;
        // s(e_j) = e_j − c·α must stay integral for the matrix to exist.
        let img: Vec<Rat> = (0..d)
            .map(|i| {
                let mut v = Rat::from_integer(((i == j) as i64).into());
                v -= c.clone() * Rat::from_integer(alpha.0[i].into());
                v
            })
            .collect();
        for (i, v) in img.iter().enumerate() {
            if !v.is_integer() {
                return Err(Error::NonIntegralImage);
            }
            use num_traits::ToPrimitive;
            matrix[i][j] = v
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::InvalidArgument("matrix overflow".into()))?;
        }
    }
    let mut w = WeylElement { matrix, length: 0 };
    w.length = length_of(&w, datum)?;
    Ok(w)
}

/// Number of indivisible positive roots mapped to negative roots.
pub fn length_of(w: &WeylElement, datum: &RootDatum) -> Result<usize> {
    let mut len = 0;
    for alpha in datum.indivisible_positive() {
        let img = w.apply(&alpha);
        // Positivity test via the pairing with ρ-like functional: a root is
        // negative iff it is the negative of a positive root.
        if datum.positive.iter().any(|(p, _)| *p == -&img) {
            len += 1;
        } else if !datum.positive.iter().any(|(p, _)| *p == img) {
            return Err(Error::InvalidDatum(format!(
                "Weyl image {:?} of root {:?} is not a root",
                img.0, alpha.0
            )));
        }
    }
    Ok(len)
}

const ORDER_BOUND: usize = 1_000_000;

/// Closure of the simple reflections under composition; elements come back
/// in canonical order (by length, then lexicographic matrix).
pub fn generate_weyl_group(datum: &RootDatum) -> Result<Vec<WeylElement>> {
    let gens: Vec<WeylElement> = datum
        .simple
        .iter()
        .map(|s| reflection_matrix(s, datum))
        .collect::<Result<_>>()?;
    let mut seen: BTreeSet<Vec<Vec<Coord>>> = BTreeSet::new();
    let id = WeylElement::identity(datum.rank);
    seen.insert(id.matrix.clone());
    let mut frontier = vec![id];
    let mut all = frontier.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &gens {
                let m = g.compose_matrix(w);
                if seen.insert(m.clone()) {
                    let mut elt = WeylElement { matrix: m, length: 0 };
                    elt.length = length_of(&elt, datum)?;
                    next.push(elt.clone());
                    all.push(elt);
                    if all.len() > ORDER_BOUND {
                        return Err(Error::OrderBoundExceeded(ORDER_BOUND));
                    }
                }
            }
        }
        frontier = next;
    }
    all.sort_by(|a, b| (a.length, &a.matrix).cmp(&(b.length, &b.matrix)));
    Ok(all)
}

/// The longest element of a generated group.
pub fn longest_element(group: &[WeylElement]) -> &WeylElement {
    group
        .iter()
        .max_by_key(|w| w.length)
        .expect("group is nonempty")
}

/// Re-indexes a series by a Weyl element. Boxes transform exactly when the
/// matrix is a signed permutation; otherwise the certificate is dropped
/// (never weakened unsoundly).
pub fn act_on_series(w: &WeylElement, s: &FormalSeries) -> FormalSeries {
    let terms: Vec<(Weight, Rat)> = s
        .terms()
        .map(|(wt, c)| (w.apply(wt), c.clone()))
        .collect();
    match s.support() {
        Support::Finite => FormalSeries::from_terms(s.dim(), terms),
        Support::Window { window, exact } => {
            // The image of a box is a box exactly for signed permutations;
            // otherwise only the (unsound-to-certify) hull is known.
            let exact = if w.is_signed_permutation() {
                exact.as_ref().map(|e| bounding_image(w, e))
            } else {
                None
            };
            let mut out = FormalSeries::from_terms(s.dim(), terms);
            out.set_window_support(bounding_image(w, window), exact);
            out
        }
    }
}

fn bounding_image(w: &WeylElement, b: &SupportWindow) -> SupportWindow {
    let d = b.dim();
    let mut lo = vec![Coord::MAX; d];
    let mut hi = vec![Coord::MIN; d];
    // image bounding box from the 2^d corners
    for mask in 0u32..(1 << d) {
        let corner = Weight(
            (0..d)
                .map(|i| {
                    if mask & (1 << i) != 0 {
                        b.bounds[i].1
                    } else {
                        b.bounds[i].0
                    }
                })
                .collect(),
        );
        let img = w.apply(&corner);
        for i in 0..d {
            lo[i] = lo[i].min(img.0[i]);
            hi[i] = hi[i].max(img.0[i]);
        }
    }
    SupportWindow {
        bounds: lo.into_iter().zip(hi).collect(),
    }
}

/// Element of the sign group `{±1}^d` of the square-root extension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignElement {
    pub signs: Vec<i8>,
}

impl SignElement {
    pub fn identity(dim: usize) -> SignElement {
        SignElement { signs: vec![1; dim] }
    }

    /// The simple sign `σ_i`, flipping the i-th square root.
    pub fn simple(dim: usize, i: usize) -> SignElement {
        let mut signs = vec![1; dim];
        signs[i] = -1;
        SignElement { signs }
    }

    pub fn compose(&self, other: &SignElement) -> SignElement {
        SignElement {
            signs: self
                .signs
                .iter()
                .zip(&other.signs)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// The scalar `Π_i signs_i^{coords_i(μ)}` the element applies to `[μ]`.
    pub fn scalar(&self, w: &Weight) -> i64 {
        let mut s = 1i64;
        for (sign, &c) in self.signs.iter().zip(&w.0) {
            if *sign < 0 && c.rem_euclid(2) == 1 {
                s = -s;
            }
        }
        s
    }
}

/// Scales each term `[μ]` by the sign character; support is unchanged.
pub fn act_sign(sigma: &SignElement, s: &FormalSeries) -> FormalSeries {
    let terms: Vec<(Weight, Rat)> = s
        .terms()
        .map(|(w, c)| {
            let k = sigma.scalar(w);
            (w.clone(), if k >= 0 { c.clone() } else { -c.clone() })
        })
        .collect();
    match s.support() {
        Support::Finite => FormalSeries::from_terms(s.dim(), terms),
        Support::Window { window, exact } => {
            let mut out = FormalSeries::from_terms(s.dim(), terms);
            out.set_window_support(window.clone(), exact.clone());
            out
        }
    }
}

/// The trivial subgroup (the SL(2) case of `W(K, T)`).
pub fn trivial_subgroup(dim: usize) -> Vec<WeylElement> {
    vec![WeylElement::identity(dim)]
}

/// The order-2 subgroup generated by `τ : α ↦ −α` on a rank-1 lattice
/// (the SO(3)-in-GL(3) case of `W(K, T)`).
pub fn tau_subgroup() -> Vec<WeylElement> {
    vec![
        WeylElement::identity(1),
        WeylElement {
            matrix: vec![vec![-1]],
            length: 1,
        },
    ]
}

/// Orbit of a weight under a list of group elements, deduplicated.
pub fn orbit(group: &[WeylElement], w: &Weight) -> Vec<Weight> {
    let mut set: BTreeSet<Weight> = BTreeSet::new();
    for g in group {
        set.insert(g.apply(w));
    }
    set.into_iter().collect()
}

/// Checks that a matrix preserves the gram form (used by validation tests).
pub fn preserves_form(w: &WeylElement, datum: &RootDatum) -> Result<bool> {
    let d = datum.rank;
    for i in 0..d {
        for j in 0..d {
            let mut ei = Weight::zero(d);
            ei.0[i] = 1;
            let mut ej = Weight::zero(d);
            ej.0[j] = 1;
            let lhs = pairing(&w.apply(&ei), &w.apply(&ej), datum)?;
            if lhs != datum.gram[i][j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Stabilizer of a weight inside a generated group.
pub fn stabilizer(group: &[WeylElement], w: &Weight) -> Vec<WeylElement> {
    group.iter().filter(|g| g.apply(w) == *w).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_root_datum, NamedSystem};
    use crate::rat;
    use crate::series::add;

    #[test]
    fn group_orders_and_lengths() {
        let a1 = make_root_datum(NamedSystem::A1);
        let g = generate_weyl_group(&a1).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.iter().map(|w| w.length).collect::<Vec<_>>(), vec![0, 1]);

        let a2 = make_root_datum(NamedSystem::A2);
        let g = generate_weyl_group(&a2).unwrap();
        assert_eq!(g.len(), 6);
        let mut lengths: Vec<usize> = g.iter().map(|w| w.length).collect();
        lengths.sort();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3]);

        let g2 = make_root_datum(NamedSystem::G2);
        assert_eq!(generate_weyl_group(&g2).unwrap().len(), 12);

        let b2 = make_root_datum(NamedSystem::B2);
        assert_eq!(generate_weyl_group(&b2).unwrap().len(), 8);

        let bc1 = make_root_datum(NamedSystem::Bc1);
        let g = generate_weyl_group(&bc1).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g[1].length, 1, "simple reflection has length 1 in BC1");
    }

    #[test]
    fn simple_reflections_have_length_one() {
        for sys in [
            NamedSystem::A1,
            NamedSystem::A1xA1,
            NamedSystem::A2,
            NamedSystem::B2,
            NamedSystem::G2,
            NamedSystem::Bc1,
        ] {
            let d = make_root_datum(sys);
            for s in &d.simple {
                assert_eq!(reflection_matrix(s, &d).unwrap().length, 1);
            }
        }
    }

    #[test]
    fn sign_character_is_multiplicative() {
        for sys in [NamedSystem::A2, NamedSystem::B2] {
            let d = make_root_datum(sys);
            let g = generate_weyl_group(&d).unwrap();
            for v in &g {
                for w in &g {
                    let vw = WeylElement {
                        matrix: v.compose_matrix(w),
                        length: 0,
                    };
                    let l = length_of(&vw, &d).unwrap();
                    assert_eq!(
                        (-1i64).pow((l % 2) as u32),
                        v.sign() * w.sign(),
                        "sign multiplicativity"
                    );
                }
            }
        }
    }

    #[test]
    fn all_elements_preserve_form() {
        for sys in [NamedSystem::A2, NamedSystem::B2, NamedSystem::G2] {
            let d = make_root_datum(sys);
            for w in generate_weyl_group(&d).unwrap() {
                assert!(preserves_form(&w, &d).unwrap());
            }
        }
    }

    #[test]
    fn act_on_window_series() {
        // w_α applied to the ascending geometric ray gives the descending one
        let a1 = make_root_datum(NamedSystem::A1);
        let g = generate_weyl_group(&a1).unwrap();
        let w = &g[1];
        let win = SupportWindow::symmetric(1, 11);
        let s = FormalSeries::from_closed_form(
            1,
            win.clone(),
            (0..=5).map(|k| (Weight(vec![1 + 2 * k]), rat(1))),
        );
        let ws = act_on_series(w, &s);
        assert!(ws.certifies(&win));
        assert_eq!(ws.coeff(&Weight(vec![-1])), rat(1));
        assert_eq!(ws.coeff(&Weight(vec![-11])), rat(1));
        assert_eq!(ws.coeff(&Weight(vec![1])), rat(0));
        // identity acts trivially
        let id = WeylElement::identity(1);
        assert_eq!(act_on_series(&id, &s), s);
        // w_α(d_{α,−}) = −d_{α,−}
        let d = add(
            &FormalSeries::monomial(Weight(vec![-1]), rat(1)),
            &FormalSeries::monomial(Weight(vec![1]), rat(-1)),
        );
        assert_eq!(act_on_series(w, &d), d.neg());
    }

    #[test]
    fn sign_action_examples() {
        let sigma = SignElement::simple(1, 0);
        let half = FormalSeries::monomial(Weight(vec![1]), rat(1));
        assert_eq!(act_sign(&sigma, &half), half.neg());
        let alpha = FormalSeries::monomial(Weight(vec![2]), rat(1));
        assert_eq!(act_sign(&sigma, &alpha), alpha);
        let id = SignElement::identity(1);
        let s = add(&half, &alpha);
        assert_eq!(act_sign(&id, &s), s);
    }

    // Elementwise commutativity of the two actions holds exactly when the
    // reflections preserve coordinate parity, i.e. on the systems with
    // pairwise orthogonal simple roots. Those are the configurations the
    // localization calculus actually uses.
    #[test]
    fn weyl_and_sign_actions_commute() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xc0117);
        for sys in [NamedSystem::A1, NamedSystem::A1xA1, NamedSystem::Bc1] {
            let d = make_root_datum(sys);
            let group = generate_weyl_group(&d).unwrap();
            for _ in 0..40 {
                let s = FormalSeries::from_terms(
                    d.rank,
                    (0..6).map(|_| {
                        (
                            Weight((0..d.rank).map(|_| rng.gen_range(-6..=6)).collect()),
                            rat(rng.gen_range(-4..=4)),
                        )
                    }),
                );
                let w = &group[rng.gen_range(0..group.len())];
                let mut sigma = SignElement::identity(d.rank);
                for i in 0..d.rank {
                    if rng.gen_bool(0.5) {
                        sigma = sigma.compose(&SignElement::simple(d.rank, i));
                    }
                }
                let lhs = act_sign(&sigma, &act_on_series(w, &s));
                let rhs = act_on_series(w, &act_sign(&sigma, &s));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn window_certificate_survives_signed_permutation_only() {
        let a2 = make_root_datum(NamedSystem::A2);
        let g = generate_weyl_group(&a2).unwrap();
        let win = SupportWindow::symmetric(2, 6);
        let s = FormalSeries::from_closed_form(
            2,
            win.clone(),
            vec![(Weight(vec![1, 1]), rat(3))],
        );
        for w in &g {
            let ws = act_on_series(w, &s);
            if w.is_signed_permutation() {
                assert!(ws.exact_window().is_some());
            } else {
                assert!(ws.exact_window().is_none(), "certificate must be dropped");
            }
            // coefficients themselves always move correctly
            assert_eq!(ws.coeff(&w.apply(&Weight(vec![1, 1]))), rat(3));
        }
    }
}
