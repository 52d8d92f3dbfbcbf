//! Root data of the simple types in the classical coordinate models.
//!
//! Roots, coroots, weights and coweights all live in one ambient space
//! `Q^n` (the sum-zero hyperplane of `Q^{l+1}` for `A_l`, `Q^l` for the other
//! classical types, `Q^8` for the `E` series, `Q^4` for `F₄`, the sum-zero
//! plane of `Q^3` for `G₂`), using the simple roots as enumerated by Bourbaki.
//!
//! Two bilinear forms are in play and must not be confused:
//!
//! * the natural pairing `⟨λ, ξ⟩` between a weight and a coweight, which in
//!   these coordinates is the Euclidean dot product;
//! * the basic inner product `B(ξ, η) = s · (ξ · η)` on coweights, where the
//!   rational scale `s` is fixed by `B(θ∨, θ∨) = 2`.
//!
//! The identification of coweights with weights via `B` therefore sends `ξ`
//! to `s·ξ`; see [`RootDatum::weight_of_coweight`].

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, q, qf, IMatrix, QMatrix, Q};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A simple Lie type such as `A₃` or `E₆`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidType {
                family: family.letter(),
                rank,
            })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Order of the Weyl group from the classical product formulas.
    pub fn weyl_order(self) -> u64 {
        let l = self.rank as u64;
        let fact = |n: u64| (1..=n).product::<u64>();
        match self.family {
            Family::A => fact(l + 1),
            Family::B | Family::C => (1u64 << l) * fact(l),
            Family::D => (1u64 << (l - 1)) * fact(l),
            Family::E => match l {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1_152,
            Family::G => 12,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::Parse("empty Lie type".into()))?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        };
        let rank = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        LieType::new(family, rank)
    }
}

/// Exact root data for one simple type, normalized by the basic inner product.
#[derive(Clone, Debug)]
pub struct RootDatum {
    ty: LieType,
    ambient_dim: usize,
    simple_roots: Vec<Vec<Q>>,
    simple_coroots: Vec<Vec<Q>>,
    fundamental_weights: Vec<Vec<Q>>,
    fundamental_coweights: Vec<Vec<Q>>,
    rho: Vec<Q>,
    rho_check: Vec<Q>,
    highest_root: Vec<Q>,
    highest_coroot: Vec<Q>,
    positive_roots: Vec<Vec<Q>>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    cartan: IMatrix,
    coxeter_number: i64,
    dual_coxeter_number: i64,
    basic_scale: Q,
    gram: QMatrix,
}

fn e(n: usize, i: usize) -> Vec<Q> {
    linalg::unit(n, i)
}

fn diff(n: usize, i: usize, j: usize) -> Vec<Q> {
    linalg::sub(&e(n, i), &e(n, j))
}

fn half_vec(signs: &[i64]) -> Vec<Q> {
    signs.iter().map(|&s| qf(s, 2)).collect()
}

fn simple_roots_of(ty: LieType) -> (usize, Vec<Vec<Q>>) {
    let l = ty.rank;
    match ty.family {
        Family::A => (l + 1, (0..l).map(|i| diff(l + 1, i, i + 1)).collect()),
        Family::B => {
            let mut r: Vec<_> = (0..l - 1).map(|i| diff(l, i, i + 1)).collect();
            r.push(e(l, l - 1));
            (l, r)
        }
        Family::C => {
            let mut r: Vec<_> = (0..l - 1).map(|i| diff(l, i, i + 1)).collect();
            r.push(linalg::scale(&e(l, l - 1), q(2)));
            (l, r)
        }
        Family::D => {
            let mut r: Vec<_> = (0..l - 1).map(|i| diff(l, i, i + 1)).collect();
            r.push(linalg::add(&e(l, l - 2), &e(l, l - 1)));
            (l, r)
        }
        Family::E => {
            let mut r = vec![
                half_vec(&[1, -1, -1, -1, -1, -1, -1, 1]),
                linalg::add(&e(8, 0), &e(8, 1)),
            ];
            for i in 0..6 {
                r.push(diff(8, i + 1, i));
            }
            r.truncate(l);
            (8, r)
        }
        Family::F => (
            4,
            vec![
                diff(4, 1, 2),
                diff(4, 2, 3),
                e(4, 3),
                half_vec(&[1, -1, -1, -1]),
            ],
        ),
        Family::G => (
            3,
            vec![diff(3, 0, 1), vec![q(-2), q(1), q(1)]],
        ),
    }
}

fn coroot(alpha: &[Q]) -> Vec<Q> {
    let n = linalg::dot(alpha, alpha);
    linalg::scale(alpha, q(2) / n)
}

impl RootDatum {
    pub fn new(ty: LieType) -> Self {
        let l = ty.rank;
        let (n, simple_roots) = simple_roots_of(ty);
        let simple_coroots: Vec<_> = simple_roots.iter().map(|a| coroot(a)).collect();

        // cartan[i][j] = ⟨α_j, α_i∨⟩
        let cartan: IMatrix = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| linalg::dot(&simple_roots[j], &simple_coroots[i]).to_integer())
                    .collect()
            })
            .collect();

        // ϖ_i = Σ_m X_im α_m with Σ_m X_im ⟨α_m, α_j∨⟩ = δ_ij.
        let pair = QMatrix::from_rows(
            &(0..l)
                .map(|m| {
                    (0..l)
                        .map(|j| linalg::dot(&simple_roots[m], &simple_coroots[j]))
                        .collect()
                })
                .collect::<Vec<_>>(),
        );
        let x = pair.inverse().expect("Cartan matrix is invertible");
        let fundamental_weights: Vec<_> = (0..l)
            .map(|i| linalg::combine(n, (0..l).map(|m| (x[(i, m)], simple_roots[m].as_slice()))))
            .collect();
        // ϖ_i∨ = Σ_m Y_im α_m∨ with Σ_m Y_im ⟨α_j, α_m∨⟩ = δ_ij, i.e. Y = (pairᵀ)⁻¹.
        let y = pair.transpose().inverse().expect("Cartan matrix is invertible");
        let fundamental_coweights: Vec<_> = (0..l)
            .map(|i| {
                linalg::combine(n, (0..l).map(|m| (y[(i, m)], simple_coroots[m].as_slice())))
            })
            .collect();

        let sum = |vs: &[Vec<Q>]| {
            linalg::combine(n, vs.iter().map(|v| (Q::one(), v.as_slice())))
        };
        let rho = sum(&fundamental_weights);
        let rho_check = sum(&fundamental_coweights);

        let positive_roots = positive_roots(&simple_roots, &simple_coroots, &fundamental_coweights);
        let height = |r: &Vec<Q>| -> Q {
            fundamental_coweights
                .iter()
                .map(|w| linalg::dot(r, w))
                .fold(Q::zero(), |a, b| a + b)
        };
        let highest_root = positive_roots
            .iter()
            .max_by_key(|r| height(r))
            .cloned()
            .expect("nonempty root system");
        let highest_coroot = coroot(&highest_root);

        let marks: Vec<i64> = fundamental_coweights
            .iter()
            .map(|w| linalg::dot(&highest_root, w).to_integer())
            .collect();
        let comarks: Vec<i64> = fundamental_weights
            .iter()
            .map(|w| linalg::dot(w, &highest_coroot).to_integer())
            .collect();
        let coxeter_number = 1 + linalg::dot(&highest_root, &rho_check).to_integer();
        let dual_coxeter_number = 1 + linalg::dot(&rho, &highest_coroot).to_integer();

        let basic_scale = q(2) / linalg::dot(&highest_coroot, &highest_coroot);
        let mut gram = QMatrix::zeros(n, n);
        for i in 0..n {
            gram[(i, i)] = basic_scale;
        }

        Self {
            ty,
            ambient_dim: n,
            simple_roots,
            simple_coroots,
            fundamental_weights,
            fundamental_coweights,
            rho,
            rho_check,
            highest_root,
            highest_coroot,
            positive_roots,
            marks,
            comarks,
            cartan,
            coxeter_number,
            dual_coxeter_number,
            basic_scale,
            gram,
        }
    }

    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn simple_roots(&self) -> &[Vec<Q>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<Q>] {
        &self.simple_coroots
    }

    pub fn fundamental_weights(&self) -> &[Vec<Q>] {
        &self.fundamental_weights
    }

    pub fn fundamental_coweights(&self) -> &[Vec<Q>] {
        &self.fundamental_coweights
    }

    pub fn rho(&self) -> &[Q] {
        &self.rho
    }

    pub fn rho_check(&self) -> &[Q] {
        &self.rho_check
    }

    pub fn highest_root(&self) -> &[Q] {
        &self.highest_root
    }

    pub fn highest_coroot(&self) -> &[Q] {
        &self.highest_coroot
    }

    pub fn positive_roots(&self) -> &[Vec<Q>] {
        &self.positive_roots
    }

    /// Marks `k_i` with `θ = Σ k_i α_i`.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// Comarks `⟨ϖ_i, θ∨⟩`; the level of a weight is `Σ n_i · comark_i`.
    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    /// `cartan()[i][j] = ⟨α_j, α_i∨⟩`.
    pub fn cartan(&self) -> &IMatrix {
        &self.cartan
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    pub fn dual_coxeter_number(&self) -> i64 {
        self.dual_coxeter_number
    }

    /// Scale `s` with `B(ξ, η) = s · (ξ · η)`.
    pub fn basic_scale(&self) -> Q {
        self.basic_scale
    }

    /// Gram matrix of the basic inner product in ambient coordinates.
    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Basic inner product of two coweights.
    pub fn pairing_basic(&self, x: &[Q], y: &[Q]) -> Result<Q> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.basic(x, y))
    }

    /// Unchecked basic inner product.
    pub(crate) fn basic(&self, x: &[Q], y: &[Q]) -> Q {
        linalg::dot(x, y) * self.basic_scale
    }

    /// Natural pairing `⟨weight, coweight⟩`.
    pub fn pairing(&self, weight: &[Q], coweight: &[Q]) -> Q {
        linalg::dot(weight, coweight)
    }

    pub(crate) fn check_dim(&self, x: &[Q]) -> Result<()> {
        if x.len() == self.ambient_dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: x.len(),
            })
        }
    }

    /// Image of a coweight in the weight space under the basic inner product.
    pub fn weight_of_coweight(&self, xi: &[Q]) -> Vec<Q> {
        linalg::scale(xi, self.basic_scale)
    }

    pub fn coweight_of_weight(&self, mu: &[Q]) -> Vec<Q> {
        linalg::scale(mu, Q::one() / self.basic_scale)
    }

    /// Dynkin labels `⟨λ, α_i∨⟩` of a weight.
    pub fn weight_labels(&self, lambda: &[Q]) -> Vec<Q> {
        self.simple_coroots
            .iter()
            .map(|c| linalg::dot(lambda, c))
            .collect()
    }

    /// Weight `Σ n_i ϖ_i`.
    pub fn weight_from_labels(&self, labels: &[i64]) -> Vec<Q> {
        linalg::combine(
            self.ambient_dim,
            labels
                .iter()
                .zip(&self.fundamental_weights)
                .map(|(&n, w)| (q(n), w.as_slice())),
        )
    }

    /// Coordinates of a coweight in the basis `ϖ_i∨`, i.e. `⟨α_i, ξ⟩`.
    pub fn coweight_coords(&self, xi: &[Q]) -> Vec<Q> {
        self.simple_roots.iter().map(|a| linalg::dot(a, xi)).collect()
    }

    /// Coweight `Σ a_i ϖ_i∨`.
    pub fn coweight_from_coords(&self, coords: &[i64]) -> Vec<Q> {
        linalg::combine(
            self.ambient_dim,
            coords
                .iter()
                .zip(&self.fundamental_coweights)
                .map(|(&n, w)| (q(n), w.as_slice())),
        )
    }

    /// Coordinates of a vector of the root span in the simple coroot basis, i.e. `⟨ϖ_i, ξ⟩`.
    pub fn coroot_coords(&self, xi: &[Q]) -> Vec<Q> {
        self.fundamental_weights
            .iter()
            .map(|w| linalg::dot(w, xi))
            .collect()
    }

    /// Coordinates of a weight in the simple root basis, i.e. `⟨λ, ϖ_i∨⟩`.
    pub fn root_coords(&self, lambda: &[Q]) -> Vec<Q> {
        self.fundamental_coweights
            .iter()
            .map(|w| linalg::dot(lambda, w))
            .collect()
    }

    /// Whether `x` lies in the real span of the roots.
    pub fn in_root_span(&self, x: &[Q]) -> bool {
        let c = self.coroot_coords(x);
        let back = linalg::combine(
            self.ambient_dim,
            c.iter()
                .copied()
                .zip(self.simple_coroots.iter().map(Vec::as_slice)),
        );
        back == x
    }

    /// `{0} ∪ {ϖ_i∨ / k_i}`.
    pub fn alcove_vertices(&self) -> Vec<Vec<Q>> {
        let mut v = vec![linalg::zeros(self.ambient_dim)];
        for (w, &k) in self.fundamental_coweights.iter().zip(&self.marks) {
            v.push(linalg::scale(w, qf(1, k)));
        }
        v
    }

    /// `ζ* = ρ∨ / h`, the logarithm of the principal element.
    pub fn principal_point(&self) -> Vec<Q> {
        linalg::scale(&self.rho_check, qf(1, self.coxeter_number))
    }

    /// `true` if `ξ ∈ Q∨` (integral coordinates in the simple coroot basis).
    pub fn in_coroot_lattice(&self, xi: &[Q]) -> bool {
        self.in_root_span(xi) && self.coroot_coords(xi).iter().all(linalg::is_integer)
    }

    /// `true` if `ξ ∈ P∨`.
    pub fn in_coweight_lattice(&self, xi: &[Q]) -> bool {
        self.in_root_span(xi) && self.coweight_coords(xi).iter().all(linalg::is_integer)
    }

    /// Reflection of an ambient vector in the simple root `α_i` (0-based).
    pub fn reflect(&self, i: usize, x: &[Q]) -> Vec<Q> {
        let c = linalg::dot(x, &self.simple_coroots[i]);
        if c.is_zero() {
            return x.to_vec();
        }
        linalg::sub(x, &linalg::scale(&self.simple_roots[i], c))
    }
}

fn positive_roots(
    simple: &[Vec<Q>],
    coroots: &[Vec<Q>],
    coweights: &[Vec<Q>],
) -> Vec<Vec<Q>> {
    let mut all: Vec<Vec<Q>> = simple.to_vec();
    let mut seen: std::collections::HashSet<Vec<Q>> = all.iter().cloned().collect();
    let mut frontier = all.clone();
    while let Some(beta) = frontier.pop() {
        for (a, c) in simple.iter().zip(coroots) {
            let k = linalg::dot(&beta, c);
            let r = linalg::sub(&beta, &linalg::scale(a, k));
            if seen.insert(r.clone()) {
                all.push(r.clone());
                frontier.push(r);
            }
        }
    }
    let mut pos: Vec<Vec<Q>> = all
        .into_iter()
        .filter(|r| coweights.iter().all(|w| linalg::dot(r, w) >= Q::zero()))
        .collect();
    pos.sort();
    pos
}
