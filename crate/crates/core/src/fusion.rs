//! Level-`k` weights, characters at torus points, the S-matrix, the fusion
//! product, the center action on `P_k`, and Kostant's `ε(μ)`.
//!
//! Weights are handled in Dynkin labels. A torus point `exp(ζ)` is stored
//! by the exact rational numbers `⟨ϖ_i, ζ⟩`, so every phase
//! `⟨w(μ+ρ), ζ⟩ mod 1` is computed in integer arithmetic and only the final
//! exponential is taken in floating point.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;

use crate::centerlat::{self, Center, CenterElement};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::linalg::{self, Q};
use crate::rootdata::RootDatum;
use crate::weyl::{self, WeylGroup};

/// Default guard for quantities that must be integers.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-6;
/// Default guard for unitarity and symmetry of `S`.
pub const UNITARITY_TOLERANCE: f64 = 1e-9;

/// A dominant weight `Σ n_i ϖ_i` of level at most `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelWeight {
    labels: Vec<i64>,
    level: i64,
}

impl LevelWeight {
    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn level(&self) -> i64 {
        self.level
    }
}

/// The set `P_k` with its index map and the points `ζ_λ = (λ+ρ)/(k+h∨)`.
#[derive(Clone, Debug)]
pub struct LevelWeightTable {
    k: i64,
    weights: Vec<LevelWeight>,
    index: HashMap<Vec<i64>, usize>,
    zeta: Vec<Vec<Q>>,
    dual: Vec<usize>,
}

impl LevelWeightTable {
    pub fn level(&self) -> i64 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[LevelWeight] {
        &self.weights
    }

    pub fn labels(&self, i: usize) -> &[i64] {
        &self.weights[i].labels
    }

    pub fn index_of(&self, labels: &[i64]) -> Option<usize> {
        self.index.get(labels).copied()
    }

    /// Index of the weight, or a precondition error naming it.
    pub fn require(&self, labels: &[i64]) -> Result<usize> {
        self.index_of(labels).ok_or_else(|| {
            Error::Precondition(format!("{labels:?} is not a level {} weight", self.k))
        })
    }

    pub fn zeta(&self, i: usize) -> &[Q] {
        &self.zeta[i]
    }

    /// Index of `*λ = −w₀λ`.
    pub fn dual_index(&self, i: usize) -> usize {
        self.dual[i]
    }
}

/// All dominant weights with `Σ n_i ⟨ϖ_i, θ∨⟩ ≤ k`, in lexicographic label order.
pub fn level_weights(rd: &RootDatum, k: i64) -> Result<LevelWeightTable> {
    if k < 0 {
        return Err(Error::Negative(k));
    }
    let comarks = rd.comarks();
    let mut all = Vec::new();
    let mut cur = Vec::with_capacity(rd.rank());
    fill_labels(comarks, k, &mut cur, &mut all);

    let big_k = k + rd.dual_coxeter_number();
    let rho = rd.rho().to_vec();
    let inv = linalg::qf(1, big_k);
    let zeta: Vec<Vec<Q>> = all
        .iter()
        .map(|labels: &Vec<i64>| {
            let shifted = linalg::add(&rd.weight_from_labels(labels), &rho);
            rd.coweight_of_weight(&linalg::scale(&shifted, inv))
        })
        .collect();
    let index: HashMap<Vec<i64>, usize> =
        all.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
    let perm = weyl::dual_permutation(rd);
    let dual = all
        .iter()
        .map(|l| {
            let mut d = vec![0; l.len()];
            for (i, &n) in l.iter().enumerate() {
                d[perm[i]] = n;
            }
            index[&d]
        })
        .collect();
    let weights = all
        .into_iter()
        .map(|labels| LevelWeight { labels, level: k })
        .collect();
    Ok(LevelWeightTable {
        k,
        weights,
        index,
        zeta,
        dual,
    })
}

fn fill_labels(comarks: &[i64], budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    let i = cur.len();
    if i == comarks.len() {
        out.push(cur.clone());
        return;
    }
    for n in 0..=budget / comarks[i] {
        cur.push(n);
        fill_labels(comarks, budget - n * comarks[i], cur, out);
        cur.pop();
    }
}

/// `c •_k` written as an integer affine map on Dynkin labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelAffineMap {
    linear: Vec<Vec<i64>>,
    shift: Vec<i64>,
}

impl LabelAffineMap {
    pub fn apply(&self, labels: &[i64]) -> Vec<i64> {
        self.linear
            .iter()
            .zip(&self.shift)
            .map(|(row, b)| b + row.iter().zip(labels).map(|(a, n)| a * n).sum::<i64>())
            .collect()
    }
}

/// The map `λ ↦ w_c(λ − k ζ_{c⁻¹})`.
pub fn center_label_map(
    rd: &RootDatum,
    center: &Center,
    c: &CenterElement,
    k: i64,
) -> Result<LabelAffineMap> {
    let (w, _) = center.center_weyl_map(rd, c)?;
    let labels_of = |x: &[Q]| linalg::to_integers(&rd.weight_labels(x)).ok_or(Error::NotCentral);
    let cols = rd
        .fundamental_weights()
        .iter()
        .map(|f| labels_of(&w.apply(f)))
        .collect::<Result<Vec<_>>>()?;
    let l = rd.rank();
    let linear = (0..l).map(|i| (0..l).map(|j| cols[j][i]).collect()).collect();
    let cinv = center.inverse(c);
    let shift = linalg::scale(&rd.weight_of_coweight(cinv.representative()), linalg::q(-k));
    let shift = labels_of(&w.apply(&shift))?;
    Ok(LabelAffineMap { linear, shift })
}

/// `c •_k λ = w_c(λ − k ζ_{c⁻¹})`, on Dynkin labels.
pub fn center_act_on_pk(
    rd: &RootDatum,
    center: &Center,
    c: &CenterElement,
    k: i64,
    labels: &[i64],
) -> Result<Vec<i64>> {
    Ok(center_label_map(rd, center, c, k)?.apply(labels))
}

/// The permutation of `P_k` induced by `c`, as an index map.
pub fn center_permutation(
    rd: &RootDatum,
    center: &Center,
    c: &CenterElement,
    table: &LevelWeightTable,
) -> Result<Vec<usize>> {
    let map = center_label_map(rd, center, c, table.k)?;
    (0..table.len())
        .map(|i| table.index_of(&map.apply(table.labels(i))).ok_or(Error::NotCentral))
        .collect()
}

/// Indices of `λ ∈ P_k` fixed by every element of `cs`.
pub fn common_fixed_weights(
    rd: &RootDatum,
    center: &Center,
    cs: &[CenterElement],
    table: &LevelWeightTable,
) -> Result<Vec<usize>> {
    let perms = cs
        .iter()
        .map(|c| center_permutation(rd, center, c, table))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..table.len())
        .filter(|&i| perms.iter().all(|p| p[i] == i))
        .collect())
}

/// A torus point `exp(ζ)` recorded as `⟨ϖ_i, ζ⟩ = a_i / d`.
#[derive(Clone, Debug)]
struct TorusPoint {
    numerators: Vec<i64>,
    denominator: i64,
}

impl TorusPoint {
    fn new(rd: &RootDatum, zeta: &[Q]) -> Self {
        let c = rd.coroot_coords(zeta);
        let d = linalg::denominator_lcm(&c);
        let numerators = c.iter().map(|x| (x * linalg::q(d)).to_integer()).collect();
        Self {
            numerators,
            denominator: d,
        }
    }

    /// `Σ_w sign(w) exp(2πi ⟨w·x, ζ⟩)` for a weight `x` given by labels.
    fn alternating_sum(&self, group: &WeylGroup, labels: &[i64]) -> Complex64 {
        let d = self.denominator;
        let scale = 2.0 * PI / d as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for idx in 0..group.order() {
            let y = group.act_on_labels(idx, labels);
            let r: i64 = y.iter().zip(&self.numerators).map(|(a, b)| a * b).sum();
            let theta = scale * r.mod_floor(&d) as f64;
            let s = f64::from(group.sign(idx));
            re += s * theta.cos();
            im += s * theta.sin();
        }
        Complex64::new(re, im)
    }
}

/// Dynkin labels of the positive roots.
fn positive_root_labels(rd: &RootDatum) -> Vec<Vec<i64>> {
    rd.positive_roots()
        .iter()
        .map(|a| {
            rd.weight_labels(a)
                .iter()
                .map(|x| x.to_integer())
                .collect()
        })
        .collect()
}

impl TorusPoint {
    /// `Π_{α>0} 2i sin(π⟨α, ζ⟩)`, the product form of the Weyl denominator.
    /// Unlike the alternating sum it has no cancellation, so small values keep
    /// full relative precision.
    fn denominator_product(&self, positive: &[Vec<i64>]) -> Complex64 {
        let d = self.denominator;
        let mut out = Complex64::new(1.0, 0.0);
        for a in positive {
            let r: i64 = a.iter().zip(&self.numerators).map(|(x, y)| x * y).sum();
            // sin(π r/d) with r reduced mod 2d
            let s = (PI * r.mod_floor(&(2 * d)) as f64 / d as f64).sin();
            out *= Complex64::new(0.0, 2.0 * s);
        }
        out
    }
}

fn rho_shifted(labels: &[i64]) -> Vec<i64> {
    labels.iter().map(|n| n + 1).collect()
}

/// `J(exp ζ) = Σ_w (−1)^{l(w)} e^{2πi⟨wρ, ζ⟩}`, evaluated as `Π_{α>0} 2i sin(π⟨α, ζ⟩)`.
pub fn weyl_denominator(rd: &RootDatum, _group: &WeylGroup, zeta: &[Q]) -> Complex64 {
    TorusPoint::new(rd, zeta).denominator_product(&positive_root_labels(rd))
}

/// [`weyl_denominator`] by the alternating sum over `W`.
pub fn weyl_denominator_sum(rd: &RootDatum, group: &WeylGroup, zeta: &[Q]) -> Complex64 {
    TorusPoint::new(rd, zeta).alternating_sum(group, &vec![1; rd.rank()])
}

/// `χ_μ(exp ζ)` by the Weyl character formula; `ζ` must be regular.
pub fn character(
    rd: &RootDatum,
    group: &WeylGroup,
    labels: &[i64],
    zeta: &[Q],
) -> Result<Complex64> {
    if labels.len() != rd.rank() {
        return Err(Error::DimensionMismatch {
            expected: rd.rank(),
            got: labels.len(),
        });
    }
    if labels.iter().any(|&n| n < 0) {
        return Err(Error::NotDominant);
    }
    let t = TorusPoint::new(rd, zeta);
    let j = t.denominator_product(&positive_root_labels(rd));
    if j.norm() < 1e-9 {
        return Err(Error::SingularPoint);
    }
    Ok(t.alternating_sum(group, &rho_shifted(labels)) / j)
}

/// `#T_K = #((1/K) P / Q∨)` under the basic identification.
pub fn torus_order(rd: &RootDatum, big_k: i64) -> u64 {
    let inv = linalg::qf(1, big_k);
    let sup: Vec<Vec<Q>> = rd
        .fundamental_weights()
        .iter()
        .map(|w| linalg::scale(&rd.coweight_of_weight(w), inv))
        .collect();
    centerlat::lattice_quotient_order(&sup, rd.simple_coroots()).expect("Q∨ ⊂ (1/K)P")
}

/// The S-matrix on `P_k × P_k`.
#[derive(Clone, Debug)]
pub struct SMatrix {
    k: i64,
    n: usize,
    torus_order: u64,
    entries: Vec<Complex64>,
    denominators: Vec<Complex64>,
}

impl SMatrix {
    pub fn level(&self) -> i64 {
        self.k
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `#T_{k+h∨}`.
    pub fn torus_order(&self) -> u64 {
        self.torus_order
    }

    pub fn get(&self, mu: usize, lambda: usize) -> Complex64 {
        self.entries[mu * self.n + lambda]
    }

    /// `J(t_λ)`.
    pub fn weyl_denominator(&self, lambda: usize) -> Complex64 {
        self.denominators[lambda]
    }

    /// `max |S − Sᵀ|`.
    pub fn symmetry_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..i {
                r = r.max((self.get(i, j) - self.get(j, i)).norm());
            }
        }
        r
    }

    /// `max |S S† − I|`.
    pub fn unitarity_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let s: Complex64 = (0..self.n)
                    .map(|m| self.get(i, m) * self.get(j, m).conj())
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                r = r.max((s - target).norm());
            }
        }
        r
    }

    /// The same matrix rescaled by a global unit so that `S_{0,0} > 0`.
    pub fn positive_first_row(&self) -> SMatrix {
        let s00 = self.get(0, 0);
        let unit = s00.conj() / s00.norm();
        let mut out = self.clone();
        for e in &mut out.entries {
            *e *= unit;
        }
        out
    }
}

/// `S_{μλ} = i^{½ dim G/T} J(t_λ) (#T_{k+h∨})^{−1/2} conj(χ_μ(t_λ))`.
pub fn s_matrix(
    rd: &RootDatum,
    group: &WeylGroup,
    table: &LevelWeightTable,
    exec: Execution,
) -> SMatrix {
    let n = table.len();
    let big_k = table.k + rd.dual_coxeter_number();
    let torus = torus_order(rd, big_k);
    let norm = (torus as f64).sqrt();
    let prefactor = Complex64::i().powu(rd.num_positive_roots() as u32);
    let points: Vec<TorusPoint> = (0..n).map(|i| TorusPoint::new(rd, table.zeta(i))).collect();
    let positive = positive_root_labels(rd);
    let denominators: Vec<Complex64> =
        exec::map_indexed(n, exec, |j| points[j].denominator_product(&positive));
    let rows: Vec<Vec<Complex64>> = exec::map_indexed(n, exec, |mu| {
        let shifted = rho_shifted(table.labels(mu));
        (0..n)
            .map(|lambda| {
                let j = denominators[lambda];
                if mu == 0 {
                    return prefactor * j / norm;
                }
                let chi = points[lambda].alternating_sum(group, &shifted) / j;
                prefactor * j * chi.conj() / norm
            })
            .collect()
    });
    let mut entries: Vec<Complex64> = rows.into_iter().flatten().collect();
    // S_{λ0} = S_{0λ}; the first row comes straight from the product formula
    for lambda in 1..n {
        entries[lambda * n] = entries[lambda];
    }
    SMatrix {
        k: table.k,
        n,
        torus_order: torus,
        entries,
        denominators,
    }
}

/// Round to the nearest integer, failing if the distance exceeds `tol`.
pub fn round_checked(x: Complex64, tol: f64) -> Result<i64> {
    let r = x.re.round();
    let residual = (x - r).norm();
    if residual > tol || !r.is_finite() {
        return Err(Error::Residual {
            value: x.re,
            residual,
            tolerance: tol,
        });
    }
    Ok(r as i64)
}

/// Integer coefficients over `P_k` in the basis `τ_μ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FusionVector {
    coefficients: Vec<i64>,
}

impl FusionVector {
    pub fn new(coefficients: Vec<i64>) -> Self {
        Self { coefficients }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut coefficients = vec![0; n];
        coefficients[i] = 1;
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn get(&self, i: usize) -> i64 {
        self.coefficients[i]
    }
}

/// `τ_λ(t_μ) = S_{λ,*μ} / S_{0,*μ}`.
pub fn tau_value(s: &SMatrix, table: &LevelWeightTable, lambda: usize, mu: usize) -> Complex64 {
    let dm = table.dual_index(mu);
    s.get(lambda, dm) / s.get(0, dm)
}

/// Values of `x` at every `t_μ`.
pub fn evaluate(s: &SMatrix, table: &LevelWeightTable, x: &FusionVector) -> Vec<Complex64> {
    (0..table.len())
        .map(|mu| {
            x.coefficients
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(l, &c)| tau_value(s, table, l, mu) * c as f64)
                .sum()
        })
        .collect()
}

/// Recover integer coefficients from values at every `t_μ`.
///
/// Uses `x_ν = Σ_μ x(t_μ) S_{0,*μ} conj(S_{ν,*μ})`, which follows from the
/// evaluation rule above and unitarity of `S`.
pub fn coefficients_from_values(
    s: &SMatrix,
    table: &LevelWeightTable,
    values: &[Complex64],
    tol: f64,
) -> Result<FusionVector> {
    let n = table.len();
    let coefficients = (0..n)
        .map(|nu| {
            let v: Complex64 = (0..n)
                .map(|mu| {
                    let dm = table.dual_index(mu);
                    values[mu] * s.get(0, dm) * s.get(nu, dm).conj()
                })
                .sum();
            round_checked(v, tol)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FusionVector { coefficients })
}

/// Product in the level-`k` fusion ring.
pub fn fusion_product(
    s: &SMatrix,
    table: &LevelWeightTable,
    x: &FusionVector,
    y: &FusionVector,
    tol: f64,
) -> Result<FusionVector> {
    let n = table.len();
    for v in [x, y] {
        if v.coefficients.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.coefficients.len(),
            });
        }
    }
    let vx = evaluate(s, table, x);
    let vy = evaluate(s, table, y);
    let prod: Vec<Complex64> = vx.iter().zip(&vy).map(|(a, b)| a * b).collect();
    coefficients_from_values(s, table, &prod, tol)
}

/// `ε(μ) = χ_μ(t*)`, cross-checked against the criterion
/// `w(μ+ρ) − ρ ∈ hQ` for some `w`. Simply laced types only.
pub fn epsilon(rd: &RootDatum, group: &WeylGroup, labels: &[i64]) -> Result<i8> {
    if !rd.lie_type().is_simply_laced() {
        return Err(Error::Precondition(format!(
            "{} is not simply laced",
            rd.lie_type()
        )));
    }
    let numeric = epsilon_numeric(rd, group, labels)?;
    let combinatorial = epsilon_combinatorial(rd, group, labels);
    let rounded = round_checked(numeric, INTEGRALITY_TOLERANCE)?;
    if rounded != i64::from(combinatorial) {
        return Err(Error::Precondition(format!(
            "ε{labels:?}: character value {numeric} disagrees with lattice criterion {combinatorial}"
        )));
    }
    Ok(combinatorial)
}

/// `χ_μ(t*)` as a complex number, any type.
pub fn epsilon_numeric(rd: &RootDatum, group: &WeylGroup, labels: &[i64]) -> Result<Complex64> {
    character(rd, group, labels, &rd.principal_point())
}

/// `(−1)^{l(w)}` for the first `w` with `w(μ+ρ) − ρ ∈ hQ`, else 0.
pub fn epsilon_combinatorial(rd: &RootDatum, group: &WeylGroup, labels: &[i64]) -> i8 {
    let h = rd.coxeter_number();
    let shifted = rho_shifted(labels);
    for idx in 0..group.order() {
        let y: Vec<i64> = group
            .act_on_labels(idx, &shifted)
            .iter()
            .map(|a| a - 1)
            .collect();
        let coords = rd.root_coords(&rd.weight_from_labels(&y));
        if coords
            .iter()
            .all(|c| c.is_integer() && c.to_integer() % h == 0)
        {
            return group.sign(idx);
        }
    }
    0
}

/// `τ♮ = Σ_μ ε(μ) τ_μ`.
pub fn tau_natural(
    rd: &RootDatum,
    group: &WeylGroup,
    table: &LevelWeightTable,
) -> Result<FusionVector> {
    let coefficients = (0..table.len())
        .map(|i| epsilon(rd, group, table.labels(i)).map(i64::from))
        .collect::<Result<Vec<_>>>()?;
    Ok(FusionVector { coefficients })
}
