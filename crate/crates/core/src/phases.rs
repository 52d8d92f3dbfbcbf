//! The form `κ` on `(T')^{w*}`, the phase factors `δ(c₁, c₂)`, their
//! closed forms for the classical series, and the prequantization
//! commutator `q`.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::centerlat::{Center, CenterElement, CenterSubgroup, CoxeterFixedSubgroup};
use crate::error::{Error, Result};
use crate::fusion::{self, LevelWeightTable};
use crate::linalg::{self, Q};
use crate::rootdata::{Family, RootDatum};
use crate::weyl::{self, WeylElement};

/// A root of unity `e^{2πi r}` held by its exact exponent `r ∈ [0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseValue {
    exponent: Q,
}

impl PhaseValue {
    pub fn new(exponent: Q) -> Self {
        Self {
            exponent: linalg::frac(exponent),
        }
    }

    pub fn one() -> Self {
        Self::new(Q::zero())
    }

    pub fn exponent(&self) -> Q {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent.is_zero()
    }

    pub fn value(&self) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI * (*self.exponent.numer() as f64)
            / (*self.exponent.denom() as f64);
        Complex64::from_polar(1.0, theta)
    }

    pub fn mul(&self, other: &PhaseValue) -> PhaseValue {
        Self::new(self.exponent + other.exponent)
    }

    pub fn pow(&self, n: i64) -> PhaseValue {
        Self::new(self.exponent * linalg::q(n))
    }
}

impl fmt::Display for PhaseValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(2πi·{})", self.exponent)
    }
}

fn require_admissible(rd: &RootDatum, z: &CenterSubgroup, k: i64) -> Result<()> {
    let (k0, _) = z.levels(rd);
    if k <= 0 || k % k0 != 0 {
        return Err(Error::LevelNotAdmissible { k, k0 });
    }
    Ok(())
}

/// `κ(t₁, t₂) = e^{2πi k (1−w*)⁻¹u·v}` for `t_i = exp((1−w*)⁻¹ u_i)`,
/// with `t_i` given by their labels in `fixed`.
pub fn kappa(
    rd: &RootDatum,
    z: &CenterSubgroup,
    fixed: &CoxeterFixedSubgroup,
    k: i64,
    t1: &[i64],
    t2: &[i64],
) -> Result<PhaseValue> {
    require_admissible(rd, z, k)?;
    let w = weyl::coxeter_element(rd);
    let x = fixed.lift(t1);
    let y = fixed.lift(t2);
    let v = linalg::sub(&y, &w.apply(&y));
    Ok(PhaseValue::new(linalg::q(k) * rd.basic(&x, &v)))
}

/// `δ(c₁, c₂)` for the standard Coxeter element.
pub fn delta(
    rd: &RootDatum,
    z: &CenterSubgroup,
    k: i64,
    c1: &CenterElement,
    c2: &CenterElement,
) -> Result<PhaseValue> {
    delta_with(rd, z, k, &weyl::coxeter_element(rd), c1, c2)
}

/// `δ(c₁, c₂) = e^{2πi k (1−w)⁻¹u·v}` for a given Coxeter element `w`.
///
/// The value is recomputed after shifting `u` and `v` by each simple
/// coroot; any change is reported as [`Error::RepresentativeDependence`].
pub fn delta_with(
    rd: &RootDatum,
    z: &CenterSubgroup,
    k: i64,
    w: &WeylElement,
    c1: &CenterElement,
    c2: &CenterElement,
) -> Result<PhaseValue> {
    require_admissible(rd, z, k)?;
    if !z.contains(c1) || !z.contains(c2) {
        return Err(Error::NotCentral);
    }
    let kq = linalg::q(k);
    let value = |u: &[Q], v: &[Q]| -> Result<Q> {
        Ok(linalg::frac(kq * rd.basic(&weyl::solve_one_minus_w(rd, w, u)?, v)))
    };
    let u = c1.representative();
    let v = c2.representative();
    let e = value(u, v)?;
    for q in rd.simple_coroots() {
        if value(&linalg::add(u, q), v)? != e || value(u, &linalg::add(v, q))? != e {
            return Err(Error::RepresentativeDependence);
        }
    }
    Ok(PhaseValue::new(e))
}

/// [`delta`] after checking that `c₁` and `c₂` each fix some weight of `table`.
pub fn delta_checked(
    rd: &RootDatum,
    center: &Center,
    z: &CenterSubgroup,
    table: &LevelWeightTable,
    c1: &CenterElement,
    c2: &CenterElement,
) -> Result<PhaseValue> {
    for c in [c1, c2] {
        if fusion::common_fixed_weights(rd, center, std::slice::from_ref(c), table)?.is_empty() {
            return Err(Error::NoFixedPoint { k: table.level() });
        }
    }
    delta(rd, z, table.level(), c1, c2)
}

/// Smallest `r ≥ 0` with `g^r = c`.
fn discrete_log(center: &Center, g: &CenterElement, c: &CenterElement) -> Option<i64> {
    (0..center.order() as i64).find(|&r| center.pow(g, r) == *c)
}

/// Tabulated values of `δ` for the classical series.
///
/// The cyclic cases use `δ(c^r, c^s) = δ(c, c)^{rs}` for the stated
/// generator `c`; for `D_l` with `l` even the value is extended
/// bimultiplicatively from the generators `exp ϖ_l∨` and `exp ϖ₁∨`.
pub fn delta_closed_form(
    rd: &RootDatum,
    center: &Center,
    z: &CenterSubgroup,
    k: i64,
    c1: &CenterElement,
    c2: &CenterElement,
) -> Result<PhaseValue> {
    if !z.contains(c1) || !z.contains(c2) {
        return Err(Error::NotCentral);
    }
    if z.is_trivial() {
        return Ok(PhaseValue::one());
    }
    let l = rd.rank() as i64;
    let m = z.order() as i64;
    let fw = |i: usize| {
        let mut c = vec![0; rd.rank()];
        c[i - 1] = 1;
        center
            .element_of(&rd.coweight_from_coords(&c))
            .expect("fundamental coweight")
    };
    let cyclic = |generator: CenterElement, base: Q| -> Result<PhaseValue> {
        let r = discrete_log(center, &generator, c1).ok_or(Error::NoClosedForm)?;
        let s = discrete_log(center, &generator, c2).ok_or(Error::NoClosedForm)?;
        Ok(PhaseValue::new(base * linalg::q(r * s)))
    };
    match rd.lie_type().family() {
        Family::A => {
            let n = (l + 1) / m;
            let generator = center.pow(&fw(1), n);
            cyclic(generator, linalg::qf(l * k * (l + 1), 2 * m * m))
        }
        Family::B => cyclic(fw(1), linalg::qf(k, 2)),
        Family::C => Ok(PhaseValue::one()),
        Family::D if l % 2 == 1 => {
            let c0 = fw(rd.rank());
            match m {
                4 => cyclic(c0, linalg::qf(k, 8)),
                2 => cyclic(center.pow(&c0, 2), linalg::qf(k, 2)),
                _ => Err(Error::NoClosedForm),
            }
        }
        Family::D => {
            let c0 = fw(rd.rank());
            let c0p = fw(1);
            let split = |c: &CenterElement| -> Result<(i64, i64)> {
                for a in 0..2 {
                    for b in 0..2 {
                        if center.mul(&center.pow(&c0, a), &center.pow(&c0p, b)) == *c {
                            return Ok((a, b));
                        }
                    }
                }
                Err(Error::NoClosedForm)
            };
            let (a1, b1) = split(c1)?;
            let (a2, b2) = split(c2)?;
            let d00 = linalg::qf(k, 8) + linalg::qf(k * l, 8);
            let d01 = linalg::qf(-k, 4);
            let d11 = Q::zero();
            Ok(PhaseValue::new(
                d00 * linalg::q(a1 * a2)
                    + d01 * linalg::q(a1 * b2 + b1 * a2)
                    + d11 * linalg::q(b1 * b2),
            ))
        }
        _ => Err(Error::NoClosedForm),
    }
}

fn check_in_lambda(z: &CenterSubgroup, x: &[Q]) -> Result<()> {
    linalg::coordinates(z.lambda_basis(), x)
        .and_then(|c| linalg::to_integers(&c))
        .map(|_| ())
        .ok_or(Error::NotSublattice)
}

/// `q(u, v) = e^{2πi k (ξ₁·ζ₂ − ξ₂·ζ₁)}` for `u = (ξ₁, ζ₁)`, `v = (ξ₂, ζ₂)` in `Λ_Z × Λ_Z`.
pub fn prequant_commutator(
    rd: &RootDatum,
    z: &CenterSubgroup,
    k: i64,
    u: (&[Q], &[Q]),
    v: (&[Q], &[Q]),
) -> Result<PhaseValue> {
    for x in [u.0, u.1, v.0, v.1] {
        check_in_lambda(z, x)?;
    }
    let e = rd.basic(u.0, v.1) - rd.basic(v.0, u.1);
    Ok(PhaseValue::new(linalg::q(k) * e))
}

/// Whether `q` is trivial on all pairs of generators of `Λ_Z²`; must agree with `k₀ | k`.
pub fn is_prequantizable(rd: &RootDatum, z: &CenterSubgroup, k: i64) -> Result<bool> {
    let zero = linalg::zeros(rd.ambient_dim());
    let mut gens: Vec<(&[Q], &[Q])> = Vec::new();
    for b in z.lambda_basis() {
        gens.push((b.as_slice(), zero.as_slice()));
        gens.push((zero.as_slice(), b.as_slice()));
    }
    let mut trivial = true;
    for &u in &gens {
        for &v in &gens {
            if !prequant_commutator(rd, z, k, u, v)?.is_one() {
                trivial = false;
            }
        }
    }
    let (k0, _) = z.levels(rd);
    let divides = k % k0 == 0;
    if trivial != divides {
        return Err(Error::Precondition(format!(
            "commutator test ({trivial}) disagrees with k0 | k ({divides}) at k = {k}"
        )));
    }
    Ok(trivial)
}

/// `δ` over all of `Z × Z`; `None` where the value is not defined at this level.
pub fn delta_table(
    rd: &RootDatum,
    z: &CenterSubgroup,
    k: i64,
) -> Result<Vec<Vec<Option<PhaseValue>>>> {
    require_admissible(rd, z, k)?;
    let w = weyl::coxeter_element(rd);
    z.elements()
        .iter()
        .map(|a| {
            z.elements()
                .iter()
                .map(|b| match delta_with(rd, z, k, &w, a, b) {
                    Ok(p) => Ok(Some(p)),
                    Err(Error::RepresentativeDependence) => Ok(None),
                    Err(e) => Err(e),
                })
                .collect()
        })
        .collect()
}

impl One for PhaseValue {
    fn one() -> Self {
        PhaseValue::one()
    }
}

impl std::ops::Mul for PhaseValue {
    type Output = PhaseValue;
    fn mul(self, rhs: PhaseValue) -> PhaseValue {
        PhaseValue::mul(&self, &rhs)
    }
}
