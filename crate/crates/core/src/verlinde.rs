//! Verlinde numbers for `G` and for `G' = G/Z`, the `PU(n)` closed form for
//! prime `n`, and the congruence and free-action checks that follow from it.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;

use crate::centerlat::{Center, CenterCharacter, CenterElement, CenterSubgroup};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::fusion::{
    self, LevelWeightTable, SMatrix, INTEGRALITY_TOLERANCE,
};
use crate::linalg::{self, Q};
use crate::phases::{self, PhaseValue};
use crate::rootdata::{Family, RootDatum};
use crate::weyl::WeylGroup;

/// A rounded value together with the quantities it came from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: i64,
    pub raw: Complex64,
    pub residual: f64,
    /// Contribution of the all-identity tuple.
    pub leading: Complex64,
    /// Everything else.
    pub correction: Complex64,
}

fn finish(leading: Complex64, correction: Complex64, tol: f64) -> Result<Evaluation> {
    let raw = leading + correction;
    let value = fusion::round_checked(raw, tol)?;
    if value < 0 {
        return Err(Error::Negative(value));
    }
    Ok(Evaluation {
        value,
        raw,
        residual: (raw - value as f64).norm(),
        leading,
        correction,
    })
}

/// Genus, twist and boundary label for `M_{G'}(Σ_g¹, μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliSpec {
    pub genus: u32,
    pub phi: Vec<CenterCharacter>,
    pub mu: Vec<i64>,
}

/// One contributing tuple class: a common fixed set and the exponent of
/// `Π_j δ(c_{2j−1}, c_{2j})`, with the subgroup coordinates of every entry.
#[derive(Clone, Debug)]
struct Tuple {
    fixed: usize,
    delta: Q,
    coords: Vec<Vec<i64>>,
    identity: bool,
}

/// Everything needed to evaluate the formulas at one `(G, Z, k)`.
#[derive(Clone, Debug)]
pub struct Verlinde<'a> {
    rd: &'a RootDatum,
    group: &'a WeylGroup,
    center: &'a Center,
    z: &'a CenterSubgroup,
    k: i64,
    table: LevelWeightTable,
    s: SMatrix,
    fixed_masks: Vec<Vec<bool>>,
    delta: Vec<Vec<Option<PhaseValue>>>,
    exec: Execution,
    tolerance: f64,
}

impl<'a> Verlinde<'a> {
    /// Requires `k ≥ 1` and `k₀ | k`.
    pub fn new(
        rd: &'a RootDatum,
        group: &'a WeylGroup,
        center: &'a Center,
        z: &'a CenterSubgroup,
        k: i64,
        exec: Execution,
    ) -> Result<Self> {
        let (k0, _) = z.levels(rd);
        if k < 1 || k % k0 != 0 {
            return Err(Error::LevelNotAdmissible { k, k0 });
        }
        let table = fusion::level_weights(rd, k)?;
        let s = fusion::s_matrix(rd, group, &table, exec);
        let fixed_masks = z
            .elements()
            .iter()
            .map(|c| {
                let p = fusion::center_permutation(rd, center, c, &table)?;
                Ok(p.iter().enumerate().map(|(i, &j)| i == j).collect())
            })
            .collect::<Result<Vec<Vec<bool>>>>()?;
        let delta = phases::delta_table(rd, z, k)?;
        Ok(Self {
            rd,
            group,
            center,
            z,
            k,
            table,
            s,
            fixed_masks,
            delta,
            exec,
            tolerance: INTEGRALITY_TOLERANCE,
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// Replaces the phase table, e.g. with closed forms. `None` marks pairs
    /// without a common fixed point.
    pub fn with_delta<F>(mut self, f: F) -> Self
    where
        F: Fn(&CenterElement, &CenterElement) -> Option<PhaseValue>,
    {
        let els = self.z.elements();
        self.delta = els
            .iter()
            .map(|a| els.iter().map(|b| f(a, b)).collect())
            .collect();
        self
    }

    pub fn level(&self) -> i64 {
        self.k
    }

    pub fn table(&self) -> &LevelWeightTable {
        &self.table
    }

    pub fn s_matrix(&self) -> &SMatrix {
        &self.s
    }

    pub fn subgroup(&self) -> &CenterSubgroup {
        self.z
    }

    /// Indices of weights fixed by `c`.
    pub fn fixed_weights(&self, c: &CenterElement) -> Result<Vec<usize>> {
        let i = self.z.index_of(c).ok_or(Error::NotCentral)?;
        Ok((0..self.table.len())
            .filter(|&j| self.fixed_masks[i][j])
            .collect())
    }

    /// `δ(c₁, c₂)` where defined at this level.
    pub fn delta(&self, c1: &CenterElement, c2: &CenterElement) -> Option<PhaseValue> {
        let i = self.z.index_of(c1)?;
        let j = self.z.index_of(c2)?;
        self.delta[i][j]
    }

    /// `Σ_{λ ∈ F} S_{λ,0}^{1−2g} S_{λ,*μ}` for every `μ`.
    fn restricted_sums(&self, genus: u32, members: &[usize]) -> Vec<Complex64> {
        let exponent = 1 - 2 * genus as i32;
        let weights: Vec<Complex64> = members
            .iter()
            .map(|&l| self.s.get(l, 0).powi(exponent))
            .collect();
        (0..self.table.len())
            .map(|mu| {
                let dm = self.table.dual_index(mu);
                members
                    .iter()
                    .zip(&weights)
                    .map(|(&l, w)| w * self.s.get(l, dm))
                    .sum()
            })
            .collect()
    }

    /// `Q(M_G(Σ_g¹, μ)) = Σ_λ S_{λ,0}^{1−2g} S_{λ,*μ}`.
    pub fn verlinde_sc(&self, genus: u32, mu: &[i64]) -> Result<Evaluation> {
        let m = self.table.require(mu)?;
        let all: Vec<usize> = (0..self.table.len()).collect();
        let v = self.restricted_sums(genus, &all)[m];
        finish(v, Complex64::zero(), self.tolerance)
    }

    /// `verlinde_sc` for every `μ ∈ P_k`, in table order.
    pub fn verlinde_sc_all(&self, genus: u32) -> Result<Vec<Evaluation>> {
        let all: Vec<usize> = (0..self.table.len()).collect();
        self.restricted_sums(genus, &all)
            .into_iter()
            .map(|v| finish(v, Complex64::zero(), self.tolerance))
            .collect()
    }

    /// Contributing tuples `(c₁, …, c_{2g}) ∈ Z^{2g}` grouped by common fixed set.
    fn tuples(&self, genus: u32) -> Result<(Vec<Vec<usize>>, Vec<Tuple>)> {
        let n = self.z.order();
        let len = 2 * genus as usize;
        let total = n.checked_pow(len as u32).ok_or_else(|| {
            Error::Precondition(format!("#Z^(2g) = {n}^{len} is too large"))
        })?;
        let np = self.table.len();
        let raw: Vec<Option<(Vec<usize>, Vec<usize>)>> =
            exec::map_indexed(total, self.exec, |mut t| {
                let mut idx = Vec::with_capacity(len);
                for _ in 0..len {
                    idx.push(t % n);
                    t /= n;
                }
                idx.reverse();
                let fixed: Vec<usize> = (0..np)
                    .filter(|&j| idx.iter().all(|&i| self.fixed_masks[i][j]))
                    .collect();
                (!fixed.is_empty()).then_some((idx, fixed))
            });
        let mut sets: Vec<Vec<usize>> = Vec::new();
        let mut lookup: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut tuples = Vec::new();
        let coords: Vec<Vec<i64>> = self
            .z
            .elements()
            .iter()
            .map(|c| self.z.coordinates(c))
            .collect();
        for (idx, fixed) in raw.into_iter().flatten() {
            let mut delta = Q::zero();
            for pair in idx.chunks(2) {
                let d = self.delta[pair[0]][pair[1]].ok_or(Error::RepresentativeDependence)?;
                delta += d.exponent();
            }
            let next = sets.len();
            let f = *lookup.entry(fixed.clone()).or_insert(next);
            if f == next {
                sets.push(fixed);
            }
            tuples.push(Tuple {
                fixed: f,
                delta: linalg::frac(delta),
                identity: idx.iter().all(|&i| self.z.elements()[i].is_identity()),
                coords: idx.iter().map(|&i| coords[i].clone()).collect(),
            });
        }
        Ok((sets, tuples))
    }

    fn check_phi(&self, genus: u32, phi: &[CenterCharacter]) -> Result<()> {
        if phi.len() != 2 * genus as usize {
            return Err(Error::Precondition(format!(
                "genus {genus} needs {} characters, got {}",
                2 * genus,
                phi.len()
            )));
        }
        let factors = self.z.invariant_factors();
        for p in phi {
            if p.exponents().len() != factors.len() {
                return Err(Error::Precondition(format!(
                    "character {:?} does not match {}",
                    p.exponents(),
                    self.z.structure_name()
                )));
            }
        }
        Ok(())
    }

    fn phi_exponent(&self, phi: &[CenterCharacter], tuple: &Tuple) -> Q {
        let factors = self.z.invariant_factors();
        let mut r = Q::zero();
        for (p, y) in phi.iter().zip(&tuple.coords) {
            for ((a, b), d) in p.exponents().iter().zip(y).zip(&factors) {
                r += linalg::qf(a * b, *d);
            }
        }
        r
    }

    fn combine(
        &self,
        genus: u32,
        phi: &[CenterCharacter],
        sets: &[Vec<usize>],
        sums: &[Vec<Complex64>],
        tuples: &[Tuple],
    ) -> Result<Vec<Evaluation>> {
        let np = self.table.len();
        let norm = (self.z.order() as f64).powi(2 * genus as i32);
        // exact histogram of phases per fixed set
        let mut hist: Vec<BTreeMap<Q, u64>> = vec![BTreeMap::new(); sets.len()];
        let mut leading_set = None;
        for t in tuples {
            if t.identity {
                leading_set = Some(t.fixed);
                continue;
            }
            let e = linalg::frac(t.delta + self.phi_exponent(phi, t));
            *hist[t.fixed].entry(e).or_insert(0) += 1;
        }
        let leading_set = leading_set.expect("identity tuple fixes all of P_k");
        (0..np)
            .map(|mu| {
                let leading = sums[leading_set][mu] / norm;
                let mut correction = Complex64::zero();
                for (f, h) in hist.iter().enumerate() {
                    let w: Complex64 = h
                        .iter()
                        .map(|(e, &count)| PhaseValue::new(*e).value() * count as f64)
                        .sum();
                    correction += w * sums[f][mu];
                }
                finish(leading, correction / norm, self.tolerance)
            })
            .collect()
    }

    /// `Q(M_{G'}(Σ_g¹, μ))` for one twist `φ`, for every `μ ∈ P_k`.
    pub fn verlinde_nsc_all(
        &self,
        genus: u32,
        phi: &[CenterCharacter],
    ) -> Result<Vec<Evaluation>> {
        self.check_phi(genus, phi)?;
        let (sets, tuples) = self.tuples(genus)?;
        let sums: Vec<Vec<Complex64>> = sets
            .iter()
            .map(|f| self.restricted_sums(genus, f))
            .collect();
        self.combine(genus, phi, &sets, &sums, &tuples)
    }

    /// `Q(M_{G'}(Σ_g¹, μ))`.
    pub fn verlinde_nsc(&self, spec: &ModuliSpec) -> Result<Evaluation> {
        let m = self.table.require(&spec.mu)?;
        Ok(self.verlinde_nsc_all(spec.genus, &spec.phi)?[m])
    }

    /// Every twist `φ ∈ Hom(Z^{2g}, U(1))` with its values over `P_k`.
    pub fn verlinde_nsc_table(
        &self,
        genus: u32,
    ) -> Result<Vec<(Vec<CenterCharacter>, Vec<Evaluation>)>> {
        let (sets, tuples) = self.tuples(genus)?;
        let sums: Vec<Vec<Complex64>> = sets
            .iter()
            .map(|f| self.restricted_sums(genus, f))
            .collect();
        let twists = all_twists(self.z, genus);
        let rows = exec::map_indexed(twists.len(), self.exec, |i| {
            self.combine(genus, &twists[i], &sets, &sums, &tuples)
        });
        twists
            .into_iter()
            .zip(rows)
            .map(|(phi, r)| r.map(|v| (phi, v)))
            .collect()
    }

    /// The `PU(n)` closed form for prime `n`, with `Q_{SU(n)}` and `τ♮` read off at `μ`.
    pub fn pu_n_prime(&self, genus: u32, phi: &[CenterCharacter], mu: &[i64]) -> Result<i64> {
        let n = self.rd.rank() as i64 + 1;
        if self.rd.lie_type().family() != Family::A
            || !is_odd_prime(n)
            || self.z.order() as i64 != n
            || self.k % n != 0
            || genus == 0
        {
            return Err(Error::Precondition(format!(
                "needs A_(n-1) with n an odd prime, Z = Z(G), n | k and g >= 1 (got {}, #Z = {}, k = {}, g = {genus})",
                self.rd.lie_type(),
                self.z.order(),
                self.k
            )));
        }
        self.check_phi(genus, phi)?;
        let q_su = i128::from(self.verlinde_sc(genus, mu)?.value);
        let eps = i128::from(fusion::epsilon(self.rd, self.group, mu)?);
        let a = i128::from(self.k / n + 1).pow((n as u32 - 1) * (genus - 1));
        let m = i128::from(n).pow(2 * genus);
        let num = if phi.iter().all(CenterCharacter::is_trivial) {
            q_su + (m - 1) * a * eps
        } else {
            q_su - a * eps
        };
        if num % m != 0 {
            return Err(Error::Precondition(format!(
                "{num} is not divisible by {m}"
            )));
        }
        i64::try_from(num / m).map_err(|_| Error::Precondition("value out of range".into()))
    }

    /// `N(μ) ≡ (k/n+1)^{(n−1)(g−1)} ε(μ) mod n^{2g}` for every `μ ∈ P_k`.
    pub fn congruence_check(&self, genus: u32) -> Result<CongruenceReport> {
        let n = self.rd.rank() as i64 + 1;
        if self.rd.lie_type().family() != Family::A || !is_prime(n) || self.k % n != 0 || genus == 0 {
            return Err(Error::Precondition(
                "needs A_(n-1) with n prime, n | k and g >= 1".into(),
            ));
        }
        let modulus = i128::from(n).pow(2 * genus);
        let a = i128::from(self.k / n + 1).pow((n as u32 - 1) * (genus - 1));
        let values = self.verlinde_sc_all(genus)?;
        let mut rows = Vec::with_capacity(values.len());
        for (i, v) in values.iter().enumerate() {
            let labels = self.table.labels(i).to_vec();
            let eps = i128::from(fusion::epsilon(self.rd, self.group, &labels)?);
            let lhs = i128::from(v.value).rem_euclid(modulus);
            let rhs = (a * eps).rem_euclid(modulus);
            rows.push(CongruenceRow {
                labels,
                n_mu: v.value,
                epsilon: eps as i8,
                holds: lhs == rhs,
            });
        }
        Ok(CongruenceReport {
            modulus: modulus as i64,
            rows,
        })
    }

    /// Whether every non-identity element of `Z` acts on `P_k` without fixed points.
    pub fn acts_freely(&self) -> bool {
        self.z
            .elements()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_identity())
            .all(|(i, _)| self.fixed_masks[i].iter().all(|&f| !f))
    }

    pub fn center(&self) -> &Center {
        self.center
    }
}

/// All `2g`-tuples of characters of `Z`, in lexicographic order.
pub fn all_twists(z: &CenterSubgroup, genus: u32) -> Vec<Vec<CenterCharacter>> {
    let chars = z.characters();
    let mut out: Vec<Vec<CenterCharacter>> = vec![Vec::new()];
    for _ in 0..2 * genus {
        out = out
            .into_iter()
            .flat_map(|p| {
                chars.iter().map(move |c| {
                    let mut v = p.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceRow {
    pub labels: Vec<i64>,
    pub n_mu: i64,
    pub epsilon: i8,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub modulus: i64,
    pub rows: Vec<CongruenceRow>,
}

impl CongruenceReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }

    pub fn counterexamples(&self) -> Vec<&CongruenceRow> {
        self.rows.iter().filter(|r| !r.holds).collect()
    }
}

/// Outcome of the free-action check for `Z = ℤ_m ⊂ Z(SU(l+1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerReport {
    /// `false` when `m | k`, where fixed points are expected.
    pub applicable: bool,
    /// Number of fixed weights for each non-identity element.
    pub fixed_counts: Vec<usize>,
    pub weights: usize,
}

impl StabilizerReport {
    pub fn free(&self) -> bool {
        self.fixed_counts.iter().all(|&n| n == 0)
    }
}

/// Subgroup `ℤ_m ⊂ Z(SU(l+1))`, generated by `exp((l+1)/m · ϖ₁∨)`.
pub fn cyclic_subgroup_a(rd: &RootDatum, center: &Center, m: i64) -> Result<CenterSubgroup> {
    let l = rd.rank() as i64;
    if rd.lie_type().family() != Family::A || m < 1 || (l + 1) % m != 0 {
        return Err(Error::Precondition(format!(
            "m = {m} does not divide l + 1 = {}",
            l + 1
        )));
    }
    let mut coords = vec![0; rd.rank()];
    coords[0] = (l + 1) / m;
    let g = center.element_of(&rd.coweight_from_coords(&coords))?;
    Ok(center.subgroup_from_generators(rd, &[g]))
}

/// For `A_l`, `Z = ℤ_m` with `m` prime and `m² | l+1`: every non-identity
/// element acts freely on `P_k` unless `m | k`.
pub fn trivial_stabilizer_check(l: usize, m: i64, k: i64) -> Result<StabilizerReport> {
    let l1 = l as i64 + 1;
    if !is_prime(m) || l1 % (m * m) != 0 {
        return Err(Error::Precondition(format!(
            "m = {m} must be prime with m^2 | {l1}"
        )));
    }
    let rd = RootDatum::new(crate::rootdata::LieType::new(Family::A, l)?);
    let center = Center::new(&rd);
    let z = cyclic_subgroup_a(&rd, &center, m)?;
    let table = fusion::level_weights(&rd, k)?;
    let fixed_counts = z
        .elements()
        .iter()
        .filter(|c| !c.is_identity())
        .map(|c| {
            fusion::common_fixed_weights(&rd, &center, std::slice::from_ref(c), &table)
                .map(|f| f.len())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StabilizerReport {
        applicable: k % m != 0,
        fixed_counts,
        weights: table.len(),
    })
}

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn is_odd_prime(n: i64) -> bool {
    n != 2 && is_prime(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{enumerate_weyl, DEFAULT_WEYL_BUDGET};

    struct Fixture {
        rd: RootDatum,
        group: WeylGroup,
        center: Center,
    }

    fn fixture(t: &str) -> Fixture {
        let rd = RootDatum::new(t.parse().unwrap());
        let group = enumerate_weyl(&rd, DEFAULT_WEYL_BUDGET).unwrap();
        let center = Center::new(&rd);
        Fixture { rd, group, center }
    }

    #[test]
    fn su2_values() {
        let f = fixture("A1");
        let triv = f.center.trivial_subgroup(&f.rd);
        for k in 1..=6 {
            let v = Verlinde::new(&f.rd, &f.group, &f.center, &triv, k, Execution::Sequential)
                .unwrap();
            assert_eq!(v.verlinde_sc(1, &[0]).unwrap().value, k + 1);
        }
        let v = Verlinde::new(&f.rd, &f.group, &f.center, &triv, 2, Execution::Sequential).unwrap();
        assert_eq!(v.verlinde_sc(2, &[0]).unwrap().value, 10);
        let v = Verlinde::new(&f.rd, &f.group, &f.center, &triv, 1, Execution::Sequential).unwrap();
        assert_eq!(v.verlinde_sc(1, &[1]).unwrap().value, 0);
        let values = |e: Vec<Evaluation>| e.iter().map(|e| e.value).collect::<Vec<_>>();
        assert_eq!(values(v.verlinde_sc_all(0).unwrap()), vec![1, 0]);
        assert_eq!(values(v.verlinde_nsc_all(0, &[]).unwrap()), vec![1, 0]);
    }

    #[test]
    fn so3_integral_for_every_twist() {
        let f = fixture("A1");
        let z = f.center.full_subgroup(&f.rd);
        let v = Verlinde::new(&f.rd, &f.group, &f.center, &z, 2, Execution::Sequential).unwrap();
        let rows = v.verlinde_nsc_table(1).unwrap();
        assert_eq!(rows.len(), 4);
        for (_, evals) in rows {
            for e in evals {
                assert!(e.residual < 1e-9);
            }
        }
    }

    #[test]
    fn pu3_level_three() {
        let f = fixture("A2");
        let z = f.center.full_subgroup(&f.rd);
        let v = Verlinde::new(&f.rd, &f.group, &f.center, &z, 3, Execution::Parallel).unwrap();
        let triv = vec![z.trivial_character(); 2];
        let spec = ModuliSpec {
            genus: 1,
            phi: triv.clone(),
            mu: vec![0, 0],
        };
        assert_eq!(v.verlinde_nsc(&spec).unwrap().value, 2);
        assert_eq!(v.pu_n_prime(1, &triv, &[0, 0]).unwrap(), 2);
        let twisted = vec![z.character(&[1]).unwrap(), z.trivial_character()];
        assert_eq!(v.pu_n_prime(1, &twisted, &[0, 0]).unwrap(), 1);
        let spec = ModuliSpec {
            genus: 1,
            phi: twisted,
            mu: vec![0, 0],
        };
        assert_eq!(v.verlinde_nsc(&spec).unwrap().value, 1);
        assert!(v.congruence_check(1).unwrap().all_hold());
    }

    #[test]
    fn stabilizers() {
        assert!(trivial_stabilizer_check(3, 2, 1).unwrap().free());
        assert!(trivial_stabilizer_check(3, 2, 3).unwrap().free());
        let r = trivial_stabilizer_check(3, 2, 2).unwrap();
        assert!(!r.applicable && !r.free());
        assert!(trivial_stabilizer_check(3, 3, 1).is_err());
    }

    #[test]
    fn inadmissible_levels() {
        let f = fixture("A2");
        let z = f.center.full_subgroup(&f.rd);
        assert_eq!(
            Verlinde::new(&f.rd, &f.group, &f.center, &z, 2, Execution::Sequential).err(),
            Some(Error::LevelNotAdmissible { k: 2, k0: 3 })
        );
    }
}
