//! The center `Z(G) = P∨/Q∨`, its subgroups, the lattices `Λ_Z`, the basic
//! levels, the map `c ↦ (w_c, ζ_c)`, and the Coxeter-fixed subgroup of the
//! torus of `G/Z`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, IMatrix, Q, QMatrix, Smith};
use crate::rootdata::RootDatum;
use crate::weyl::{self, WeylElement, WeylGroup};

/// A quotient `L / M` of full-rank lattices in a common real span, with
/// canonical coordinates along the Smith invariant factors.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    sup_basis: Vec<Vec<Q>>,
    smith: Smith,
    v_inverse: IMatrix,
}

impl LatticeQuotient {
    /// `sup` and `sub` are bases (as ambient vectors) of `L ⊇ M`.
    pub fn new(sup: &[Vec<Q>], sub: &[Vec<Q>]) -> Result<Self> {
        let rows: IMatrix = sub
            .iter()
            .map(|v| {
                linalg::coordinates(sup, v)
                    .and_then(|c| linalg::to_integers(&c))
                    .ok_or(Error::NotSublattice)
            })
            .collect::<Result<_>>()?;
        let smith = linalg::smith(&rows);
        if smith.diagonal.len() != sup.len() || smith.diagonal.contains(&0) {
            return Err(Error::NotSublattice);
        }
        let v = QMatrix::from_rows(
            &smith
                .v
                .iter()
                .map(|r| r.iter().map(|&x| linalg::q(x)).collect())
                .collect::<Vec<_>>(),
        );
        let v_inverse = (0..v.rows())
            .map(|i| {
                linalg::to_integers(v.inverse().expect("unimodular").row(i))
                    .expect("unimodular inverse is integral")
            })
            .collect();
        Ok(Self {
            sup_basis: sup.to_vec(),
            smith,
            v_inverse,
        })
    }

    pub fn order(&self) -> u64 {
        self.smith.diagonal.iter().map(|&d| d as u64).product()
    }

    /// Invariant factors greater than one, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.smith.diagonal.iter().copied().filter(|&d| d > 1).collect()
    }

    fn nontrivial_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.smith
            .diagonal
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 1)
            .map(|(i, _)| i)
    }

    /// Canonical label of the class of `x ∈ L`, or `None` if `x ∉ L`.
    pub fn canonical(&self, x: &[Q]) -> Option<Vec<i64>> {
        let c = linalg::to_integers(&linalg::coordinates(&self.sup_basis, x)?)?;
        let n = c.len();
        let y: Vec<i64> = (0..n)
            .map(|j| (0..n).map(|i| c[i] * self.smith.v[i][j]).sum())
            .collect();
        Some(
            self.nontrivial_positions()
                .map(|i| y[i].mod_floor(&self.smith.diagonal[i]))
                .collect(),
        )
    }

    /// A representative in `L` of the class with the given label.
    pub fn lift(&self, label: &[i64]) -> Vec<Q> {
        let n = self.sup_basis.len();
        let mut y = vec![0i64; n];
        for (pos, &v) in self.nontrivial_positions().zip(label) {
            y[pos] = v;
        }
        let c: Vec<i64> = (0..n)
            .map(|j| (0..n).map(|i| y[i] * self.v_inverse[i][j]).sum())
            .collect();
        let dim = self.sup_basis.first().map_or(0, Vec::len);
        linalg::combine(
            dim,
            c.iter()
                .map(|&x| linalg::q(x))
                .zip(self.sup_basis.iter().map(Vec::as_slice)),
        )
    }

    /// All labels, in lexicographic order.
    pub fn labels(&self) -> Vec<Vec<i64>> {
        let factors = self.invariant_factors();
        let mut out = vec![Vec::new()];
        for d in factors {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..d).map(move |x| {
                        let mut v = p.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

/// `[sup : sub]` for lattices given by bases.
pub fn lattice_quotient_order(sup: &[Vec<Q>], sub: &[Vec<Q>]) -> Result<u64> {
    Ok(LatticeQuotient::new(sup, sub)?.order())
}

/// Element of `Z(G) = P∨/Q∨`.
///
/// The representative is always the alcove vertex `ζ_c`, the unique vertex
/// of the fundamental alcove lying in the coset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CenterElement {
    label: Vec<i64>,
    representative: Vec<Q>,
}

impl CenterElement {
    pub fn label(&self) -> &[i64] {
        &self.label
    }

    pub fn representative(&self) -> &[Q] {
        &self.representative
    }

    pub fn is_identity(&self) -> bool {
        self.label.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for CenterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.label.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The full center `Z(G)` with its group law.
#[derive(Clone, Debug)]
pub struct Center {
    quotient: LatticeQuotient,
    elements: Vec<CenterElement>,
}

impl Center {
    pub fn new(rd: &RootDatum) -> Self {
        let quotient = LatticeQuotient::new(rd.fundamental_coweights(), rd.simple_coroots())
            .expect("Q∨ ⊂ P∨");
        let vertices: Vec<Vec<Q>> = rd
            .alcove_vertices()
            .into_iter()
            .filter(|v| rd.in_coweight_lattice(v))
            .collect();
        let mut elements: Vec<CenterElement> = vertices
            .into_iter()
            .map(|v| CenterElement {
                label: quotient.canonical(&v).expect("vertex in P∨"),
                representative: v,
            })
            .collect();
        elements.sort();
        assert_eq!(
            elements.len() as u64,
            quotient.order(),
            "alcove vertices in P∨ must represent Z(G)"
        );
        Self { quotient, elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn invariant_factors(&self) -> Vec<i64> {
        self.quotient.invariant_factors()
    }

    /// Short name such as `1`, `Z4` or `Z2xZ2`.
    pub fn structure_name(&self) -> String {
        group_name(&self.invariant_factors())
    }

    /// All elements, sorted by label; the identity comes first.
    pub fn elements(&self) -> &[CenterElement] {
        &self.elements
    }

    pub fn identity(&self) -> &CenterElement {
        &self.elements[0]
    }

    fn by_label(&self, label: &[i64]) -> &CenterElement {
        self.elements
            .iter()
            .find(|e| e.label == label)
            .expect("label of an element of Z(G)")
    }

    /// The class of `exp(ξ)` for `ξ ∈ P∨`.
    pub fn element_of(&self, xi: &[Q]) -> Result<CenterElement> {
        let label = self.quotient.canonical(xi).ok_or(Error::NotCentral)?;
        Ok(self.by_label(&label).clone())
    }

    pub fn mul(&self, a: &CenterElement, b: &CenterElement) -> CenterElement {
        let s = linalg::add(&a.representative, &b.representative);
        self.element_of(&s).expect("closed under addition")
    }

    pub fn inverse(&self, a: &CenterElement) -> CenterElement {
        self.element_of(&linalg::neg(&a.representative))
            .expect("closed under negation")
    }

    pub fn pow(&self, a: &CenterElement, n: i64) -> CenterElement {
        self.element_of(&linalg::scale(&a.representative, linalg::q(n)))
            .expect("closed under scaling")
    }

    pub fn element_order(&self, a: &CenterElement) -> usize {
        (1..=self.order())
            .find(|&n| self.pow(a, n as i64).is_identity())
            .expect("finite group")
    }

    pub fn trivial_subgroup(&self, rd: &RootDatum) -> CenterSubgroup {
        self.subgroup_from_generators(rd, &[])
    }

    pub fn full_subgroup(&self, rd: &RootDatum) -> CenterSubgroup {
        self.subgroup_from_generators(rd, &self.elements)
    }

    /// Subgroup generated by `gens`, with `Λ_Z` from a Hermite basis of `Q∨ + Σ ℤ ζ_c`.
    pub fn subgroup_from_generators(
        &self,
        rd: &RootDatum,
        gens: &[CenterElement],
    ) -> CenterSubgroup {
        let mut set: BTreeSet<CenterElement> = BTreeSet::new();
        set.insert(self.identity().clone());
        loop {
            let mut grew = false;
            let current: Vec<CenterElement> = set.iter().cloned().collect();
            for a in &current {
                for g in gens {
                    if set.insert(self.mul(a, g)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let elements: Vec<CenterElement> = set.into_iter().collect();

        let mut rows: IMatrix = rd
            .simple_coroots()
            .iter()
            .map(|a| linalg::to_integers(&rd.coweight_coords(a)).expect("Q∨ ⊂ P∨"))
            .collect();
        for g in gens {
            rows.push(linalg::to_integers(&rd.coweight_coords(&g.representative)).expect("in P∨"));
        }
        let hnf = linalg::hermite_rows(rows);
        let lambda_basis: Vec<Vec<Q>> = hnf.iter().map(|r| rd.coweight_from_coords(r)).collect();
        let quotient =
            LatticeQuotient::new(&lambda_basis, rd.simple_coroots()).expect("Q∨ ⊂ Λ_Z");
        let mut gens: Vec<CenterElement> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        gens.sort();
        gens.dedup();
        CenterSubgroup {
            elements,
            generators: gens,
            lambda_basis,
            quotient,
        }
    }

    /// Every subgroup of `Z(G)`, ordered by size then by element labels.
    pub fn all_subgroups(&self, rd: &RootDatum) -> Vec<CenterSubgroup> {
        let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
        let mut out = Vec::new();
        let els = &self.elements;
        for i in 0..els.len() {
            for j in i..els.len() {
                let z = self.subgroup_from_generators(rd, &[els[i].clone(), els[j].clone()]);
                let key: Vec<Vec<i64>> = z.elements.iter().map(|e| e.label.clone()).collect();
                if seen.insert(key) {
                    out.push(z);
                }
            }
        }
        out.sort_by(|a, b| {
            a.order().cmp(&b.order()).then_with(|| {
                let ka: Vec<&[i64]> = a.elements.iter().map(|e| e.label()).collect();
                let kb: Vec<&[i64]> = b.elements.iter().map(|e| e.label()).collect();
                ka.cmp(&kb)
            })
        });
        out
    }

    /// `(w_c, ζ_c)` with `w_c(ζ* − ζ_{c⁻¹}) = ζ*`.
    ///
    /// `w_c` is found by walking `ζ* − ζ_{c⁻¹}` back into the fundamental
    /// chamber; since `ζ*` is regular the walk lands on it exactly when the
    /// data are consistent, and the resulting element is unique.
    pub fn center_weyl_map(
        &self,
        rd: &RootDatum,
        c: &CenterElement,
    ) -> Result<(WeylElement, Vec<Q>)> {
        let zeta_star = rd.principal_point();
        let cinv = self.inverse(c);
        let x = linalg::sub(&zeta_star, &cinv.representative);
        let (w, image) = weyl::to_dominant(rd, &x, true);
        if image != zeta_star {
            return Err(Error::NoWeylElement);
        }
        Ok((w, c.representative.clone()))
    }

    /// Same map, by exhaustive search over an enumerated Weyl group.
    pub fn center_weyl_map_exhaustive(
        &self,
        rd: &RootDatum,
        group: &WeylGroup,
        c: &CenterElement,
    ) -> Result<(WeylElement, Vec<Q>)> {
        let zeta_star = rd.principal_point();
        let x = linalg::sub(&zeta_star, &self.inverse(c).representative);
        (0..group.order())
            .map(|i| group.element(rd, i))
            .find(|w| w.apply(&x) == zeta_star)
            .map(|w| (w, c.representative.clone()))
            .ok_or(Error::NoWeylElement)
    }

    /// Affine action `ζ ↦ w_c(ζ − ζ_{c⁻¹})` on the coweight space.
    pub fn affine_action(&self, rd: &RootDatum, c: &CenterElement, zeta: &[Q]) -> Result<Vec<Q>> {
        let (w, _) = self.center_weyl_map(rd, c)?;
        let cinv = self.inverse(c);
        Ok(w.apply(&linalg::sub(zeta, &cinv.representative)))
    }
}

fn group_name(factors: &[i64]) -> String {
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors
            .iter()
            .map(|d| format!("Z{d}"))
            .collect::<Vec<_>>()
            .join("x")
    }
}

/// A subgroup `Z ⊂ Z(G)` together with its lattice `Λ_Z = exp⁻¹(Z)`.
#[derive(Clone, Debug)]
pub struct CenterSubgroup {
    elements: Vec<CenterElement>,
    generators: Vec<CenterElement>,
    lambda_basis: Vec<Vec<Q>>,
    /// `Λ_Z / Q∨ ≅ Z`, used for character coordinates.
    quotient: LatticeQuotient,
}

impl CenterSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[CenterElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[CenterElement] {
        &self.generators
    }

    pub fn lambda_basis(&self) -> &[Vec<Q>] {
        &self.lambda_basis
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, c: &CenterElement) -> bool {
        self.elements.contains(c)
    }

    pub fn index_of(&self, c: &CenterElement) -> Option<usize> {
        self.elements.iter().position(|e| e == c)
    }

    /// Invariant factors of `Z` itself.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.quotient.invariant_factors()
    }

    pub fn structure_name(&self) -> String {
        group_name(&self.invariant_factors())
    }

    /// Coordinates of `c` along the invariant-factor generators of `Z`.
    pub fn coordinates(&self, c: &CenterElement) -> Vec<i64> {
        self.quotient
            .canonical(&c.representative)
            .expect("element of the subgroup")
    }

    /// Every character of `Z`, as exponent vectors.
    pub fn characters(&self) -> Vec<CenterCharacter> {
        let factors = self.invariant_factors();
        self.quotient
            .labels()
            .into_iter()
            .map(|exponents| CenterCharacter {
                exponents,
                factors: factors.clone(),
            })
            .collect()
    }

    pub fn trivial_character(&self) -> CenterCharacter {
        let factors = self.invariant_factors();
        CenterCharacter {
            exponents: vec![0; factors.len()],
            factors,
        }
    }

    pub fn character(&self, exponents: &[i64]) -> Result<CenterCharacter> {
        let factors = self.invariant_factors();
        if exponents.len() != factors.len() {
            return Err(Error::Precondition(format!(
                "character of {} needs {} exponents, got {}",
                self.structure_name(),
                factors.len(),
                exponents.len()
            )));
        }
        Ok(CenterCharacter {
            exponents: exponents
                .iter()
                .zip(&factors)
                .map(|(a, d)| a.mod_floor(d))
                .collect(),
            factors,
        })
    }

    /// `(k₀, k₁)`: smallest `k` with `k Λ_Z·Λ_Z ⊂ ℤ`, resp. `k Λ_Z·P∨ ⊂ ℤ`.
    pub fn levels(&self, rd: &RootDatum) -> (i64, i64) {
        let k0 = self
            .lambda_basis
            .iter()
            .flat_map(|a| self.lambda_basis.iter().map(move |b| rd.basic(a, b)))
            .fold(1i64, |acc, x| acc.lcm(x.denom()));
        let k1 = self
            .lambda_basis
            .iter()
            .flat_map(|a| rd.fundamental_coweights().iter().map(move |b| rd.basic(a, b)))
            .fold(1i64, |acc, x| acc.lcm(x.denom()));
        (k0, k1)
    }
}

/// A character `φ` of `Z`, `φ(c) = exp(2πi Σ a_j y_j / d_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CenterCharacter {
    exponents: Vec<i64>,
    factors: Vec<i64>,
}

impl CenterCharacter {
    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }

    /// Exact exponent `r ∈ [0, 1)` with `φ(c) = e^{2πi r}`.
    pub fn exponent_at(&self, z: &CenterSubgroup, c: &CenterElement) -> Q {
        let y = z.coordinates(c);
        let s = self
            .exponents
            .iter()
            .zip(&y)
            .zip(&self.factors)
            .fold(Q::zero(), |acc, ((a, y), d)| acc + linalg::qf(a * y, *d));
        linalg::frac(s)
    }
}

/// The finite group `(T')^{w*} = (1−w*)⁻¹Λ_Z / Λ_Z` with the maps of
/// `1 → Z(G)/Z → (T')^{w*} → Z → 1`.
#[derive(Clone, Debug)]
pub struct CoxeterFixedSubgroup {
    quotient: LatticeQuotient,
    one_minus_w: QMatrix,
    lambda_quotient: LatticeQuotient,
}

impl CoxeterFixedSubgroup {
    pub fn order(&self) -> u64 {
        self.quotient.order()
    }

    pub fn invariant_factors(&self) -> Vec<i64> {
        self.quotient.invariant_factors()
    }

    /// Labels of all elements.
    pub fn labels(&self) -> Vec<Vec<i64>> {
        self.quotient.labels()
    }

    /// A logarithm in `(1−w*)⁻¹Λ_Z` of the element with this label.
    pub fn lift(&self, label: &[i64]) -> Vec<Q> {
        self.quotient.lift(label)
    }

    /// `Z(G)/Z → (T')^{w*}` induced by `P∨ ⊂ (1−w*)⁻¹Λ_Z`.
    pub fn inject(&self, c: &CenterElement) -> Vec<i64> {
        self.quotient
            .canonical(&c.representative)
            .expect("P∨ ⊂ (1−w*)⁻¹Λ_Z")
    }

    /// `(T')^{w*} → Z` induced by `ξ ↦ (1−w*)ξ mod Q∨`; returns the label in `Λ_Z/Q∨`.
    pub fn project(&self, label: &[i64]) -> Vec<i64> {
        let xi = self.quotient.lift(label);
        let u = self.one_minus_w.mul_vec(&xi);
        self.lambda_quotient
            .canonical(&u)
            .expect("(1−w*) maps into Λ_Z")
    }
}

pub fn coxeter_fixed_subgroup(rd: &RootDatum, z: &CenterSubgroup) -> CoxeterFixedSubgroup {
    coxeter_fixed_subgroup_for(rd, z, &weyl::coxeter_element(rd))
}

/// Same construction for an arbitrary Coxeter element.
pub fn coxeter_fixed_subgroup_for(
    rd: &RootDatum,
    z: &CenterSubgroup,
    w: &WeylElement,
) -> CoxeterFixedSubgroup {
    let sup: Vec<Vec<Q>> = z
        .lambda_basis
        .iter()
        .map(|b| weyl::solve_one_minus_w(rd, w, b).expect("Coxeter element"))
        .collect();
    let quotient = LatticeQuotient::new(&sup, &z.lambda_basis).expect("Λ_Z ⊂ (1−w*)⁻¹Λ_Z");
    let n = rd.ambient_dim();
    let mut one_minus_w = QMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            one_minus_w[(i, j)] -= w.matrix()[(i, j)];
        }
    }
    CoxeterFixedSubgroup {
        quotient,
        one_minus_w,
        lambda_quotient: z.quotient.clone(),
    }
}

/// Standard subgroup choices by name: `trivial`, `full`, or explicit generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupSpec {
    Trivial,
    Full,
    /// Each generator is a coweight `Σ n_i ϖ_i∨` given by its integer coefficients.
    Generators(Vec<Vec<i64>>),
}

impl SubgroupSpec {
    /// Parses `trivial`, `full`, or `gen:<g>[,<g>…]` where each `<g>` is a
    /// `+`-separated sum of terms `[n]w<i>`, e.g. `gen:w1`, `gen:2w1`, `gen:w3+w4`.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let s = s.trim();
        match s {
            "trivial" | "1" => return Ok(Self::Trivial),
            "full" => return Ok(Self::Full),
            _ => {}
        }
        let body = s.strip_prefix("gen:").unwrap_or(s);
        let mut gens = Vec::new();
        for g in body.split(',').filter(|g| !g.trim().is_empty()) {
            let mut coeffs = vec![0i64; rank];
            for term in g.split('+') {
                let term = term.trim();
                let (n, idx) = term
                    .split_once('w')
                    .ok_or_else(|| Error::Parse(format!("bad generator term {term:?}")))?;
                let n: i64 = if n.is_empty() {
                    1
                } else {
                    n.parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?
                };
                let idx: usize = idx
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad index in {term:?}")))?;
                if idx == 0 || idx > rank {
                    return Err(Error::IndexOutOfRange { index: idx, rank });
                }
                coeffs[idx - 1] += n;
            }
            gens.push(coeffs);
        }
        if gens.is_empty() {
            return Err(Error::Parse(format!("no generators in {s:?}")));
        }
        Ok(Self::Generators(gens))
    }

    pub fn build(&self, rd: &RootDatum, center: &Center) -> Result<CenterSubgroup> {
        Ok(match self {
            Self::Trivial => center.trivial_subgroup(rd),
            Self::Full => center.full_subgroup(rd),
            Self::Generators(gs) => {
                let els = gs
                    .iter()
                    .map(|c| center.element_of(&rd.coweight_from_coords(c)))
                    .collect::<Result<Vec<_>>>()?;
                center.subgroup_from_generators(rd, &els)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::DEFAULT_WEYL_BUDGET;

    fn setup(t: &str) -> (RootDatum, Center) {
        let rd = RootDatum::new(t.parse().unwrap());
        let c = Center::new(&rd);
        (rd, c)
    }

    #[test]
    fn center_structures() {
        for (t, name) in [
            ("A3", "Z4"),
            ("D4", "Z2xZ2"),
            ("D5", "Z4"),
            ("E6", "Z3"),
            ("E7", "Z2"),
            ("E8", "1"),
            ("F4", "1"),
            ("G2", "1"),
            ("B3", "Z2"),
            ("C4", "Z2"),
        ] {
            assert_eq!(setup(t).1.structure_name(), name, "{t}");
        }
    }

    #[test]
    fn generated_subgroups_a3() {
        let (rd, c) = setup("A3");
        let g = c.element_of(&rd.coweight_from_coords(&[2, 0, 0])).unwrap();
        let z = c.subgroup_from_generators(&rd, &[g]);
        assert_eq!(z.order(), 2);
        assert_eq!(z.levels(&rd), (1, 2));
        let t = c.subgroup_from_generators(&rd, &[]);
        assert_eq!(t.order(), 1);
        assert_eq!(
            lattice_quotient_order(t.lambda_basis(), rd.simple_coroots()).unwrap(),
            1
        );
        assert_eq!(c.full_subgroup(&rd).levels(&rd), (4, 4));
        assert_eq!(c.all_subgroups(&rd).len(), 3);
    }

    #[test]
    fn d_series_subgroups() {
        let (rd, c) = setup("D4");
        assert_eq!(c.all_subgroups(&rd).len(), 5);
        let z = SubgroupSpec::parse("gen:w1", 4).unwrap().build(&rd, &c).unwrap();
        assert_eq!(z.levels(&rd), (1, 2));
        let (rd5, c5) = setup("D5");
        let z = SubgroupSpec::parse("gen:w1", 5).unwrap().build(&rd5, &c5).unwrap();
        assert_eq!(z.order(), 2);
        assert_eq!(c5.full_subgroup(&rd5).levels(&rd5), (4, 4));
    }

    #[test]
    fn lambda_extremes() {
        for t in ["A4", "B3", "D4", "E6"] {
            let (rd, c) = setup(t);
            let full = c.full_subgroup(&rd);
            let triv = c.trivial_subgroup(&rd);
            assert_eq!(lattice_quotient_order(rd.fundamental_coweights(), full.lambda_basis()).unwrap(), 1);
            assert_eq!(lattice_quotient_order(full.lambda_basis(), rd.fundamental_coweights()).unwrap(), 1);
            assert_eq!(lattice_quotient_order(triv.lambda_basis(), rd.simple_coroots()).unwrap(), 1);
            assert_eq!(triv.levels(&rd), (1, 1));
        }
    }

    #[test]
    fn quotient_orders() {
        let (rd, _) = setup("A2");
        let p: Vec<Vec<Q>> = rd
            .fundamental_weights()
            .iter()
            .map(|w| rd.coweight_of_weight(w))
            .collect();
        assert_eq!(lattice_quotient_order(&p, rd.simple_coroots()).unwrap(), 3);
        assert_eq!(lattice_quotient_order(&p, &p).unwrap(), 1);
        assert_eq!(
            lattice_quotient_order(rd.simple_coroots(), &p),
            Err(Error::NotSublattice)
        );
        // #T_3 for A1
        let (rd, _) = setup("A1");
        let p3: Vec<Vec<Q>> = rd
            .fundamental_weights()
            .iter()
            .map(|w| linalg::scale(&rd.coweight_of_weight(w), linalg::qf(1, 3)))
            .collect();
        assert_eq!(lattice_quotient_order(&p3, rd.simple_coroots()).unwrap(), 6);
    }

    #[test]
    fn weyl_map_is_injective_homomorphism() {
        for t in ["A1", "A2", "A3", "D4", "D5", "B3", "C3"] {
            let (rd, c) = setup(t);
            let g = weyl::enumerate_weyl(&rd, DEFAULT_WEYL_BUDGET).unwrap();
            let maps: Vec<WeylElement> = c
                .elements()
                .iter()
                .map(|e| {
                    let (w, z) = c.center_weyl_map(&rd, e).unwrap();
                    let (w2, _) = c.center_weyl_map_exhaustive(&rd, &g, e).unwrap();
                    assert_eq!(w.matrix(), w2.matrix());
                    assert_eq!(z, e.representative());
                    w
                })
                .collect();
            assert!(maps[0].is_identity());
            for (i, a) in c.elements().iter().enumerate() {
                for (j, b) in c.elements().iter().enumerate() {
                    if i != j {
                        assert_ne!(maps[i].matrix(), maps[j].matrix(), "{t}");
                    }
                    let ab = c.mul(a, b);
                    let k = c.elements().iter().position(|e| *e == ab).unwrap();
                    assert_eq!(maps[i].compose(&maps[j]).matrix(), maps[k].matrix(), "{t}");
                }
            }
        }
    }

    #[test]
    fn a1_weyl_map() {
        let (rd, c) = setup("A1");
        let nt = &c.elements()[1];
        let (w, z) = c.center_weyl_map(&rd, nt).unwrap();
        assert_eq!(w.word(), &[0]);
        assert_eq!(z, rd.fundamental_coweights()[0]);
    }

    #[test]
    fn coxeter_fixed_orders_and_exactness() {
        for t in ["A1", "A2", "A3", "A5", "B2", "C3", "D4", "D5", "D6", "E6"] {
            let (rd, c) = setup(t);
            for z in c.all_subgroups(&rd) {
                let f = coxeter_fixed_subgroup(&rd, &z);
                assert_eq!(f.order() as usize, c.order(), "{t}");
                let image: BTreeSet<Vec<i64>> = c.elements().iter().map(|e| f.inject(e)).collect();
                assert_eq!(image.len(), c.order() / z.order(), "{t}");
                let kernel: BTreeSet<Vec<i64>> = f
                    .labels()
                    .into_iter()
                    .filter(|l| f.project(l).iter().all(|&x| x == 0))
                    .collect();
                assert_eq!(kernel, image, "{t}");
                let proj: BTreeSet<Vec<i64>> = f.labels().iter().map(|l| f.project(l)).collect();
                assert_eq!(proj.len(), z.order(), "{t}");
            }
        }
    }

    #[test]
    fn characters_of_z4() {
        let (rd, c) = setup("A3");
        let z = c.full_subgroup(&rd);
        let chars = z.characters();
        assert_eq!(chars.len(), 4);
        let phi = z.character(&[1]).unwrap();
        for a in z.elements() {
            for b in z.elements() {
                let lhs = phi.exponent_at(&z, &c.mul(a, b));
                let rhs = linalg::frac(phi.exponent_at(&z, a) + phi.exponent_at(&z, b));
                assert_eq!(lhs, rhs);
            }
            assert_eq!(linalg::frac(phi.exponent_at(&z, a) * linalg::q(4)), Q::zero());
        }
        assert!(z.character(&[1, 2]).is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(SubgroupSpec::parse("trivial", 3).unwrap(), SubgroupSpec::Trivial);
        assert_eq!(
            SubgroupSpec::parse("gen:2w1,w3+w4", 4).unwrap(),
            SubgroupSpec::Generators(vec![vec![2, 0, 0, 0], vec![0, 0, 1, 1]])
        );
        assert!(SubgroupSpec::parse("gen:w9", 4).is_err());
        assert!(SubgroupSpec::parse("gen:", 4).is_err());
    }
}
