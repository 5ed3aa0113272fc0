//! Divisor classes on the moduli space of stable marked curves, written in
//! the generators `λ`, `ψ_j`, `δ_irr` and `δ_{i,S}`, and the class formulas
//! for pullbacks of theta divisors and their comparison classes.
//!
//! Classes are compared coefficientwise: the generators are treated as a
//! free basis for every `(g, n)`, including low genus where relations exist.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graphs::{admissible_pairs, check_gn, BoundaryPair};
use crate::rational::{abs, binom2, format_rational, int, rat, Rational};
use crate::stability::{check_degree_vector, degree_on, StabilityParameter, Twist};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    g: u32,
    n: usize,
    lambda: Rational,
    psi: Vec<Rational>,
    delta_irr: Rational,
    /// Only nonzero coefficients are stored.
    delta: BTreeMap<BoundaryPair, Rational>,
}

impl DivisorClass {
    pub fn zero(g: u32, n: usize) -> Result<Self> {
        check_gn(g, n)?;
        Ok(DivisorClass {
            g,
            n,
            lambda: Rational::zero(),
            psi: vec![Rational::zero(); n],
            delta_irr: Rational::zero(),
            delta: BTreeMap::new(),
        })
    }

    /// `psi[j - 1]` is the coefficient of `ψ_j`. Boundary pairs with `1 ∉ S`
    /// are rewritten as `(g - i, S^c)`; repeated pairs accumulate.
    pub fn new<I>(g: u32, n: usize, lambda: Rational, psi: Vec<Rational>, delta_irr: Rational, delta: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BoundaryPair, Rational)>,
    {
        let mut class = Self::zero(g, n)?;
        if psi.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: psi.len() });
        }
        class.lambda = lambda;
        class.psi = psi;
        class.delta_irr = delta_irr;
        for (p, c) in delta {
            class.add_delta(p, c)?;
        }
        Ok(class)
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> Rational {
        self.lambda
    }

    /// Coefficient of `ψ_j`, `j` 1-based.
    pub fn psi(&self, j: usize) -> Rational {
        self.psi[j - 1]
    }

    pub fn psi_coefficients(&self) -> &[Rational] {
        &self.psi
    }

    pub fn delta_irr(&self) -> Rational {
        self.delta_irr
    }

    pub fn delta(&self, p: BoundaryPair) -> Rational {
        let (q, _) = p.normalized(self.g, self.n);
        self.delta.get(&q).copied().unwrap_or_else(Rational::zero)
    }

    /// Nonzero boundary coefficients in canonical pair order.
    pub fn delta_terms(&self) -> &BTreeMap<BoundaryPair, Rational> {
        &self.delta
    }

    pub fn add_delta(&mut self, p: BoundaryPair, c: Rational) -> Result<()> {
        let (q, _) = p.normalized(self.g, self.n);
        if !q.is_admissible(self.g, self.n) {
            return Err(Error::InadmissiblePair { pair: p, g: self.g, n: self.n });
        }
        let slot = self.delta.entry(q).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.delta.remove(&q);
        }
        Ok(())
    }

    /// True when every boundary coefficient, `δ_irr` included, vanishes.
    pub fn boundary_is_zero(&self) -> bool {
        self.delta.is_empty() && self.delta_irr.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.boundary_is_zero() && self.lambda.is_zero() && self.psi.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, c: Rational) -> Self {
        let mut out = self.clone();
        out.lambda *= c;
        out.psi.iter_mut().for_each(|x| *x *= c);
        out.delta_irr *= c;
        out.delta = self
            .delta
            .iter()
            .map(|(&p, &x)| (p, x * c))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        out
    }

    fn check_basis(&self, other: &Self) -> Result<()> {
        if (self.g, self.n) != (other.g, other.n) {
            return Err(Error::BasisMismatch(self.g, self.n, other.g, other.n));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        class_algebra(self, Rational::one(), other, Rational::one())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        class_algebra(self, Rational::one(), other, -Rational::one())
    }
}

/// `ca · a + cb · b`.
pub fn class_algebra(a: &DivisorClass, ca: Rational, b: &DivisorClass, cb: Rational) -> Result<DivisorClass> {
    a.check_basis(b)?;
    let mut out = a.scaled(ca);
    let b = b.scaled(cb);
    out.lambda += b.lambda;
    for (x, y) in out.psi.iter_mut().zip(&b.psi) {
        *x += *y;
    }
    out.delta_irr += b.delta_irr;
    for (&p, &c) in &b.delta {
        out.add_delta(p, c)?;
    }
    Ok(out)
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    /// Panics on mismatched `(g, n)`; use [`DivisorClass::checked_add`] otherwise.
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_add(rhs).expect("classes over the same (g, n)")
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_sub(rhs).expect("classes over the same (g, n)")
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        self.scaled(-Rational::one())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Rational, String)> = vec![(self.lambda, "lambda".into())];
        for (j, &c) in self.psi.iter().enumerate() {
            terms.push((c, format!("psi_{}", j + 1)));
        }
        terms.push((self.delta_irr, "delta_irr".into()));
        for (p, &c) in &self.delta {
            terms.push((c, format!("delta_{p}")));
        }
        let mut first = true;
        for (c, name) in terms.into_iter().filter(|(c, _)| !c.is_zero()) {
            let sign = if c < Rational::zero() { "-" } else { "+" };
            let magnitude = abs(c);
            let coefficient = if magnitude.is_one() {
                String::new()
            } else {
                format!("{} ", format_rational(&magnitude))
            };
            match (first, sign) {
                (true, "+") => write!(f, "{coefficient}{name}")?,
                (true, _) => write!(f, "-{coefficient}{name}")?,
                (false, s) => write!(f, " {s} {coefficient}{name}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `-λ + Σ_j C(d_j + 1, 2) ψ_j`, the part shared by every class below.
fn base_class(g: u32, n: usize, degrees: &[i64]) -> Result<DivisorClass> {
    check_degree_vector(g, n, degrees)?;
    let mut class = DivisorClass::zero(g, n)?;
    class.lambda = int(-1);
    class.psi = degrees.iter().map(|&d| int(binom2(d + 1))).collect();
    Ok(class)
}

/// Pullback of the theta divisor of the φ-compactified universal Jacobian
/// along the section `O(Σ d_j p_j)` (twisted to be φ-stable):
/// `-λ + Σ C(d_j+1, 2) ψ_j + Σ [C(d(i,S) - i + 1, 2) - C(d_S - i + 1, 2)] δ_{i,S}`.
pub fn theta_pullback(phi: &StabilityParameter, degrees: &[i64]) -> Result<DivisorClass> {
    let (g, n) = (phi.g(), phi.n());
    let mut class = base_class(g, n, degrees)?;
    let label = phi.polytope_label()?;
    for (&p, &d) in label.entries() {
        let i = i64::from(p.i);
        let c = binom2(d - i + 1) - binom2(degree_on(degrees, p) - i + 1);
        class.add_delta(p, int(c))?;
    }
    Ok(class)
}

/// Change of the theta class across the wall where the label at `pair`
/// moves from `d - 1` to `d`: `(d - i) δ_{i,S}`.
pub fn wall_crossing_single(g: u32, n: usize, pair: BoundaryPair, d: i64) -> Result<DivisorClass> {
    check_gn(g, n)?;
    if !pair.is_admissible(g, n) {
        return Err(Error::InadmissiblePair { pair, g, n });
    }
    let mut class = DivisorClass::zero(g, n)?;
    class.add_delta(pair, int(d - i64::from(pair.i)))?;
    Ok(class)
}

/// `θ(φ2) - θ(φ1)`, assembled from unit wall crossings along a path that
/// moves one label coordinate at a time.
pub fn wall_crossing(phi1: &StabilityParameter, phi2: &StabilityParameter) -> Result<DivisorClass> {
    let (g, n) = (phi1.g(), phi1.n());
    if (g, n) != (phi2.g(), phi2.n()) {
        return Err(Error::BasisMismatch(g, n, phi2.g(), phi2.n()));
    }
    let (from, to) = (phi1.polytope_label()?, phi2.polytope_label()?);
    let mut total = DivisorClass::zero(g, n)?;
    for (&p, &d1) in from.entries() {
        let d2 = to.entries()[&p];
        for d in (d1 + 1)..=d2 {
            total = &total + &wall_crossing_single(g, n, p, d)?;
        }
        for d in ((d2 + 1)..=d1).rev() {
            total = &total - &wall_crossing_single(g, n, p, d)?;
        }
    }
    debug_assert_eq!(Ok(&total), wall_crossing_closed_form(phi1, phi2).as_ref());
    Ok(total)
}

/// `Σ [C(d₂ - i + 1, 2) - C(d₁ - i + 1, 2)] δ_{i,S}`.
pub fn wall_crossing_closed_form(phi1: &StabilityParameter, phi2: &StabilityParameter) -> Result<DivisorClass> {
    let (g, n) = (phi1.g(), phi1.n());
    if (g, n) != (phi2.g(), phi2.n()) {
        return Err(Error::BasisMismatch(g, n, phi2.g(), phi2.n()));
    }
    let (from, to) = (phi1.polytope_label()?, phi2.polytope_label()?);
    let mut class = DivisorClass::zero(g, n)?;
    for (&p, &d1) in from.entries() {
        let i = i64::from(p.i);
        let d2 = to.entries()[&p];
        class.add_delta(p, int(binom2(d2 - i + 1) - binom2(d1 - i + 1)))?;
    }
    Ok(class)
}

/// Pullback of the theta divisor of the stable semiabelic pair:
/// `-λ + Σ C(d_j + 1, 2) ψ_j - Σ C(d_S - i + 1, 2) δ_{i,S}`.
pub fn stable_pairs_class(g: u32, n: usize, degrees: &[i64]) -> Result<DivisorClass> {
    let mut class = base_class(g, n, degrees)?;
    for p in admissible_pairs(g, n)? {
        let i = i64::from(p.i);
        class.add_delta(p, int(-binom2(degree_on(degrees, p) - i + 1)))?;
    }
    Ok(class)
}

/// Hain's class: the stable-pairs class plus `δ_irr / 8`.
pub fn hain_class(g: u32, n: usize, degrees: &[i64]) -> Result<DivisorClass> {
    let mut class = stable_pairs_class(g, n, degrees)?;
    class.delta_irr = rat(1, 8);
    Ok(class)
}

fn positive_support(degrees: &[i64]) -> u64 {
    degrees
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .fold(0, |acc, (j, _)| acc | (1 << j))
}

fn require_negative(degrees: &[i64]) -> Result<()> {
    if degrees.iter().all(|&d| d >= 0) {
        return Err(Error::NoNegativeDegree);
    }
    Ok(())
}

/// Class of the closure of the locus where `O(Σ d_j p_j)` has a section
/// (some `d_j < 0`): pairs with `S ⊆ S⁺ = {j : d_j > 0}` use
/// `C(|d_S - i| + 1, 2)`, the rest `C(d_S - i + 1, 2)`.
pub fn mueller_class(g: u32, n: usize, degrees: &[i64]) -> Result<DivisorClass> {
    let mut class = base_class(g, n, degrees)?;
    require_negative(degrees)?;
    let positive = positive_support(degrees);
    for p in admissible_pairs(g, n)? {
        let i = i64::from(p.i);
        let d_s = degree_on(degrees, p);
        let c = if p.mask() & !positive == 0 {
            binom2((d_s - i).abs() + 1)
        } else {
            binom2(d_s - i + 1)
        };
        class.add_delta(p, int(-c))?;
    }
    Ok(class)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuellerComparison {
    /// Pairs with `d_j > 0` for all `j ∈ S` and `d_S < i`.
    pub pairs: Vec<BoundaryPair>,
    /// `Σ_{(i,S) ∈ T} (i - d_S) δ_{i,S}`.
    pub diff: DivisorClass,
}

/// The set `T_d⃗` and the difference between the stable-pairs class and the
/// closure class: `stable_pairs = mueller + diff`.
pub fn mueller_comparison(g: u32, n: usize, degrees: &[i64]) -> Result<MuellerComparison> {
    check_degree_vector(g, n, degrees)?;
    require_negative(degrees)?;
    let positive = positive_support(degrees);
    let mut pairs = Vec::new();
    let mut diff = DivisorClass::zero(g, n)?;
    for p in admissible_pairs(g, n)? {
        let i = i64::from(p.i);
        let d_s = degree_on(degrees, p);
        if p.mask() & !positive == 0 && d_s < i {
            pairs.push(p);
            diff.add_delta(p, int(i - d_s))?;
        }
    }
    debug_assert_eq!(
        stable_pairs_class(g, n, degrees)?,
        &mueller_class(g, n, degrees)? + &diff
    );
    Ok(MuellerComparison { pairs, diff })
}

/// Coefficients of `C⁺_{i,S}` in the divisor `Σ d_j p_j + Σ (d_S - d(i,S)) C⁺_{i,S}`
/// whose line bundle is φ-stable on every fiber.
pub fn twist_divisor_coeffs(phi: &StabilityParameter, degrees: &[i64]) -> Result<Twist> {
    check_degree_vector(phi.g(), phi.n(), degrees)?;
    let label = phi.polytope_label()?;
    Ok(label
        .entries()
        .iter()
        .map(|(&p, &d)| (p, degree_on(degrees, p) - d))
        .collect())
}
