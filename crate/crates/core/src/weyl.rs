//! Weyl group elements as exact matrices, the Coxeter element, the longest
//! element, and exact inversion of `1 − w` on the root span.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix, Q};
use crate::rootdata::RootDatum;

/// Default ceiling on `|W|` for full enumeration. Admits everything up to
/// `E₆` (51 840); `E₇` (2 903 040) needs an explicit larger budget.
pub const DEFAULT_WEYL_BUDGET: u64 = 1_000_000;

/// A Weyl group element acting on the ambient space.
///
/// `word = [i₁, …, i_m]` (0-based) means `s_{i₁} ⋯ s_{i_m}`, so `s_{i_m}` acts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    matrix: QMatrix,
    word: Vec<usize>,
    sign: i8,
}

impl WeylElement {
    pub fn identity(rd: &RootDatum) -> Self {
        Self {
            matrix: QMatrix::identity(rd.ambient_dim()),
            word: Vec::new(),
            sign: 1,
        }
    }

    /// Reflection in the `i`-th simple root, `1 ≤ i ≤ l`.
    pub fn simple_reflection(rd: &RootDatum, i: usize) -> Result<Self> {
        if i == 0 || i > rd.rank() {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: rd.rank(),
            });
        }
        Ok(Self::reflection0(rd, i - 1))
    }

    fn reflection0(rd: &RootDatum, i: usize) -> Self {
        let n = rd.ambient_dim();
        let cols: Vec<Vec<Q>> = (0..n)
            .map(|j| rd.reflect(i, &linalg::unit(n, j)))
            .collect();
        Self {
            matrix: QMatrix::from_cols(&cols),
            word: vec![i],
            sign: -1,
        }
    }

    /// Product of simple reflections `s_{word[0]} ⋯ s_{word[last]}` (0-based indices).
    pub fn from_word(rd: &RootDatum, word: &[usize]) -> Self {
        let mut w = Self::identity(rd);
        for &i in word {
            w = w.compose(&Self::reflection0(rd, i));
        }
        w
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `(−1)^{length}`.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement {
            matrix: self.matrix.mul(&other.matrix),
            word,
            sign: self.sign * other.sign,
        }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            // orthogonal for the Euclidean structure of the ambient model
            matrix: self.matrix.transpose(),
            word: self.word.iter().rev().copied().collect(),
            sign: self.sign,
        }
    }

    /// `x · self · x⁻¹`.
    pub fn conjugate_by(&self, x: &WeylElement) -> WeylElement {
        x.compose(self).compose(&x.inverse())
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        self.matrix.mul_vec(v)
    }

    pub fn pow(&self, n: usize) -> WeylElement {
        let mut acc = WeylElement {
            matrix: QMatrix::identity(self.matrix.rows()),
            word: Vec::new(),
            sign: 1,
        };
        for _ in 0..n {
            acc = acc.compose(self);
        }
        acc
    }

    /// Smallest `m ≥ 1` with `w^m = 1`.
    pub fn order(&self) -> usize {
        let mut m = 1;
        let mut p = self.matrix.clone();
        while !p.is_identity() {
            p = p.mul(&self.matrix);
            m += 1;
        }
        m
    }

    /// Matrix of `w` on `Q∨` in the simple coroot basis (integral).
    pub fn coroot_matrix(&self, rd: &RootDatum) -> QMatrix {
        let cols: Vec<Vec<Q>> = rd
            .simple_coroots()
            .iter()
            .map(|a| rd.coroot_coords(&self.apply(a)))
            .collect();
        QMatrix::from_cols(&cols)
    }

    /// Determinant of `w` restricted to the span of the roots.
    pub fn det_on_root_span(&self, rd: &RootDatum) -> Q {
        self.coroot_matrix(rd).det()
    }

    /// Permutes the root set.
    pub fn permutes_roots(&self, rd: &RootDatum) -> bool {
        let mut roots: Vec<Vec<Q>> = rd.positive_roots().to_vec();
        roots.extend(rd.positive_roots().iter().map(|r| linalg::neg(r)));
        let set: std::collections::HashSet<&Vec<Q>> = roots.iter().collect();
        roots.iter().all(|r| set.contains(&self.apply(r)))
    }
}

/// The Coxeter element `w*`, the product of the simple reflections in
/// Bourbaki order with `s_l` applied first.
///
/// For `A_l` this is the cyclic shift `e_i ↦ e_{i+1}`; for `B_l`/`C_l` it is
/// `e_i ↦ e_{i+1}`, `e_l ↦ −e_1`.
pub fn coxeter_element(rd: &RootDatum) -> WeylElement {
    let word: Vec<usize> = (0..rd.rank()).collect();
    WeylElement::from_word(rd, &word)
}

pub fn element_order(w: &WeylElement) -> usize {
    w.order()
}

/// Walk `x` into the closed dominant chamber by simple reflections.
///
/// Returns `w` and `w·x`, where `w·x` is dominant for the pairing with the
/// simple coroots when `x` is a weight, or with the simple roots when
/// `as_coweight` is set.
pub fn to_dominant(rd: &RootDatum, x: &[Q], as_coweight: bool) -> (WeylElement, Vec<Q>) {
    let mut word = Vec::new();
    let mut cur = x.to_vec();
    let test = |v: &[Q], i: usize| -> Q {
        if as_coweight {
            linalg::dot(&rd.simple_roots()[i], v)
        } else {
            linalg::dot(v, &rd.simple_coroots()[i])
        }
    };
    while let Some(i) = (0..rd.rank()).find(|&i| test(&cur, i) < Q::from_integer(0)) {
        cur = rd.reflect(i, &cur);
        word.push(i);
    }
    word.reverse();
    (WeylElement::from_word(rd, &word), cur)
}

/// The longest element `w₀`, the unique element sending every positive root to a negative one.
pub fn longest_element(rd: &RootDatum) -> WeylElement {
    let minus_rho = linalg::neg(rd.rho());
    to_dominant(rd, &minus_rho, false).0
}

fn is_dominant(rd: &RootDatum, mu: &[Q]) -> bool {
    rd.weight_labels(mu).iter().all(|x| *x >= Q::from_integer(0))
}

/// `*μ = −w₀ μ`.
pub fn dual_weight(rd: &RootDatum, mu: &[Q]) -> Result<Vec<Q>> {
    rd.check_dim(mu)?;
    if !is_dominant(rd, mu) {
        return Err(Error::NotDominant);
    }
    Ok(linalg::neg(&longest_element(rd).apply(mu)))
}

/// Dual of a dominant weight given by Dynkin labels.
pub fn dual_labels(rd: &RootDatum, labels: &[i64]) -> Vec<i64> {
    let w0 = longest_element(rd);
    let mu = rd.weight_from_labels(labels);
    let d = linalg::neg(&w0.apply(&mu));
    linalg::to_integers(&rd.weight_labels(&d)).expect("integral weight")
}

/// The diagram automorphism `−w₀` as a permutation of simple indices:
/// `*ϖ_i = ϖ_{p[i]}`.
pub fn dual_permutation(rd: &RootDatum) -> Vec<usize> {
    let w0 = longest_element(rd);
    (0..rd.rank())
        .map(|i| {
            let mut e = vec![0; rd.rank()];
            e[i] = 1;
            let mu = linalg::neg(&w0.apply(&rd.weight_from_labels(&e)));
            let labels = linalg::to_integers(&rd.weight_labels(&mu)).expect("integral weight");
            labels.iter().position(|&x| x == 1).expect("permutation of fundamental weights")
        })
        .collect()
}

/// Exact solution of `(1 − w) x = v` on the root span.
pub fn solve_one_minus_w(rd: &RootDatum, w: &WeylElement, v: &[Q]) -> Result<Vec<Q>> {
    rd.check_dim(v)?;
    if !rd.in_root_span(v) {
        return Err(Error::NotInRootSpan);
    }
    let l = rd.rank();
    let wm = w.coroot_matrix(rd);
    let mut m = QMatrix::identity(l);
    for i in 0..l {
        for j in 0..l {
            m[(i, j)] -= wm[(i, j)];
        }
    }
    let rhs = rd.coroot_coords(v);
    let x = linalg::solve(&m, &rhs).ok_or(Error::Singular)?;
    Ok(linalg::combine(
        rd.ambient_dim(),
        x.iter()
            .copied()
            .zip(rd.simple_coroots().iter().map(Vec::as_slice)),
    ))
}

/// The full Weyl group, enumerated as the orbit of `ρ`.
///
/// Elements are stored compactly by their integer action on Dynkin labels
/// (the fundamental weight basis) together with a reduced word; the ambient
/// rational matrix is materialized on demand with [`WeylGroup::element`].
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rank: usize,
    signs: Vec<i8>,
    words: Vec<Vec<u8>>,
    /// Row-major `rank × rank` blocks.
    actions: Vec<i64>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.signs.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn sign(&self, idx: usize) -> i8 {
        self.signs[idx]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Reduced word of element `idx` (0-based simple reflection indices).
    pub fn word(&self, idx: usize) -> Vec<usize> {
        self.words[idx].iter().map(|&i| usize::from(i)).collect()
    }

    pub fn element(&self, rd: &RootDatum, idx: usize) -> WeylElement {
        let mut w = WeylElement::from_word(rd, &self.word(idx));
        w.sign = self.signs[idx];
        w
    }

    /// Action of element `idx` on a weight in Dynkin label coordinates.
    pub fn act_on_labels(&self, idx: usize, labels: &[i64]) -> Vec<i64> {
        let l = self.rank;
        let a = &self.actions[idx * l * l..(idx + 1) * l * l];
        (0..l)
            .map(|i| (0..l).map(|j| a[i * l + j] * labels[j]).sum())
            .collect()
    }

    /// `{(sign(w), w·λ)}` over the whole group, in enumeration order.
    pub fn signed_orbit(&self, labels: &[i64]) -> Vec<(i8, Vec<i64>)> {
        (0..self.order())
            .map(|i| (self.signs[i], self.act_on_labels(i, labels)))
            .collect()
    }
}

/// Enumerate `W` by breadth-first closure under left multiplication by simple reflections.
pub fn enumerate_weyl(rd: &RootDatum, max_order: u64) -> Result<WeylGroup> {
    let order = rd.lie_type().weyl_order();
    if order > max_order {
        return Err(Error::WeylBudgetExceeded {
            order,
            budget: max_order,
        });
    }
    let l = rd.rank();
    let cartan = rd.cartan();
    let rho = vec![1i64; l];

    let mut signs = vec![1i8];
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    let mut actions: Vec<i64> = Vec::with_capacity(order as usize * l * l);
    for i in 0..l {
        for j in 0..l {
            actions.push(i64::from(i == j));
        }
    }
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::with_capacity(order as usize);
    seen.insert(rho.clone(), 0);
    let mut images = vec![rho];

    let mut head = 0;
    while head < signs.len() {
        for s in 0..l {
            let img = &images[head];
            // s_s λ = λ − λ_s α_s, with (α_s)_j = cartan[j][s]
            let ls = img[s];
            let new_img: Vec<i64> = (0..l).map(|j| img[j] - ls * cartan[j][s]).collect();
            if seen.contains_key(&new_img) {
                continue;
            }
            let base = head * l * l;
            let mut block = vec![0i64; l * l];
            for c in 0..l {
                let src_s = actions[base + s * l + c];
                for r in 0..l {
                    block[r * l + c] = actions[base + r * l + c] - src_s * cartan[r][s];
                }
            }
            let mut word = Vec::with_capacity(words[head].len() + 1);
            word.push(s as u8);
            word.extend_from_slice(&words[head]);
            seen.insert(new_img.clone(), signs.len());
            signs.push(-signs[head]);
            words.push(word);
            actions.extend_from_slice(&block);
            images.push(new_img);
        }
        head += 1;
    }
    debug_assert_eq!(signs.len() as u64, order);
    Ok(WeylGroup {
        rank: l,
        signs,
        words,
        actions,
    })
}
