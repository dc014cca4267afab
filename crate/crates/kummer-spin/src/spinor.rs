//! The spinor module S = ∧*H¹ of rank 16 and the Clifford algebra C(V) ≅ End(S).
//!
//! V = H¹ ⊕ H¹* has basis e₁..e₄, e₁*..e₄* (coordinates 0..3 and 4..7). A vector
//! (w, θ) acts on S by L_w + D_θ, wedge on the left plus the derivation contracting
//! the first slot. Spinor coordinates are indexed by subsets of {1,2,3,4}, ordered
//! by degree and then lexicographically.

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact_linalg::{int, rat_from_int, Int, IntMatrix, Rat, RatMatrix};
use crate::lattice::{int_json, matrix_json, IntLattice, LatticeVector};

pub const SPIN_DIM: usize = 16;
pub const V_DIM: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("element is not invertible")]
    NotInvertible,
    #[error("conjugation does not preserve V: not in the Clifford group")]
    NotClifford,
    #[error("element mixes even and odd parts")]
    MixedParity,
    #[error("monomial decomposition is not integral")]
    NonIntegralDecomposition,
}

/// Subsets of {0,1,2,3} as bitmasks, in basis order.
pub fn subsets() -> &'static [u8; SPIN_DIM] {
    static S: OnceLock<[u8; SPIN_DIM]> = OnceLock::new();
    S.get_or_init(|| {
        let mut v: Vec<u8> = (0u8..16).collect();
        v.sort_by_key(|&m| (m.count_ones(), bits(m)));
        let mut out = [0u8; SPIN_DIM];
        out.copy_from_slice(&v);
        out
    })
}

fn bits(m: u8) -> Vec<u8> {
    (0..4).filter(|i| m & (1 << i) != 0).collect()
}

pub fn index_of(mask: u8) -> usize {
    subsets().iter().position(|&m| m == mask).expect("mask out of range")
}

pub fn degree(idx: usize) -> u32 {
    subsets()[idx].count_ones()
}

/// Spinor indices of even degree (S⁺) and odd degree (S⁻), in basis order.
pub fn even_indices() -> Vec<usize> {
    (0..SPIN_DIM).filter(|&i| degree(i).is_multiple_of(2)).collect()
}

pub fn odd_indices() -> Vec<usize> {
    (0..SPIN_DIM).filter(|&i| degree(i) % 2 == 1).collect()
}

/// Indices of ∧²H¹ in basis order: e12, e13, e14, e23, e24, e34.
pub fn h2_indices() -> Vec<usize> {
    (0..SPIN_DIM).filter(|&i| degree(i) == 2).collect()
}

/// e_S ∧ e_T = sign · e_{S∪T}; zero when they overlap.
pub fn wedge_sign(s: u8, t: u8) -> i32 {
    if s & t != 0 {
        return 0;
    }
    let mut inv = 0;
    for a in bits(s) {
        for b in bits(t) {
            if a > b {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// (−1)^{i(i−1)/2}
pub fn tau_sign(deg: u32) -> i32 {
    if (deg * deg.saturating_sub(1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpinorElement {
    pub coords: Vec<Int>,
}

impl SpinorElement {
    pub fn new(coords: Vec<Int>) -> Self {
        assert_eq!(coords.len(), SPIN_DIM, "spinor needs 16 coordinates");
        SpinorElement { coords }
    }

    pub fn zero() -> Self {
        SpinorElement { coords: vec![Int::zero(); SPIN_DIM] }
    }

    pub fn basis(mask: u8) -> Self {
        let mut s = Self::zero();
        s.coords[index_of(mask)] = Int::one();
        s
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn point() -> Self {
        Self::basis(0b1111)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| int(x)).collect())
    }

    /// (r, H, s) ∈ H⁰ ⊕ H² ⊕ H⁴.
    pub fn even(r: Int, h: &[Int], s: Int) -> Self {
        assert_eq!(h.len(), 6, "H² has 6 coordinates");
        let mut x = Self::zero();
        x.coords[0] = r;
        for (k, &i) in h2_indices().iter().enumerate() {
            x.coords[i] = h[k].clone();
        }
        x.coords[SPIN_DIM - 1] = s;
        x
    }

    pub fn even_i64(r: i64, h: [i64; 6], s: i64) -> Self {
        Self::even(int(r), &h.map(int), int(s))
    }

    /// (w, β) ∈ H¹ ⊕ H³.
    pub fn odd(w: &[Int], beta: &[Int]) -> Self {
        let mut x = Self::zero();
        let odd = odd_indices();
        for k in 0..4 {
            x.coords[odd[k]] = w[k].clone();
            x.coords[odd[4 + k]] = beta[k].clone();
        }
        x
    }

    /// The 8 coordinates of S⁺ in the order (r, H, s).
    pub fn from_s_plus(c: &[Int]) -> Self {
        let mut x = Self::zero();
        for (k, &i) in even_indices().iter().enumerate() {
            x.coords[i] = c[k].clone();
        }
        x
    }

    pub fn from_s_minus(c: &[Int]) -> Self {
        let mut x = Self::zero();
        for (k, &i) in odd_indices().iter().enumerate() {
            x.coords[i] = c[k].clone();
        }
        x
    }

    pub fn s_plus_coords(&self) -> Vec<Int> {
        even_indices().iter().map(|&i| self.coords[i].clone()).collect()
    }

    pub fn s_minus_coords(&self) -> Vec<Int> {
        odd_indices().iter().map(|&i| self.coords[i].clone()).collect()
    }

    pub fn h2(&self) -> Vec<Int> {
        h2_indices().iter().map(|&i| self.coords[i].clone()).collect()
    }

    pub fn degree_part(&self, d: u32) -> Self {
        let mut x = self.clone();
        for i in 0..SPIN_DIM {
            if degree(i) != d {
                x.coords[i] = Int::zero();
            }
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_even(&self) -> bool {
        odd_indices().iter().all(|&i| self.coords[i].is_zero())
    }

    pub fn is_odd(&self) -> bool {
        even_indices().iter().all(|&i| self.coords[i].is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: &Int) -> Self {
        Self::new(self.coords.iter().map(|a| a * s).collect())
    }

    pub fn wedge(&self, o: &Self) -> Self {
        let masks = subsets();
        let mut out = Self::zero();
        for i in 0..SPIN_DIM {
            if self.coords[i].is_zero() {
                continue;
            }
            for j in 0..SPIN_DIM {
                if o.coords[j].is_zero() {
                    continue;
                }
                let s = wedge_sign(masks[i], masks[j]);
                if s != 0 {
                    let k = index_of(masks[i] | masks[j]);
                    out.coords[k] += int(s as i64) * &self.coords[i] * &o.coords[j];
                }
            }
        }
        out
    }

    /// ∫_X, the coefficient of e₁∧e₂∧e₃∧e₄.
    pub fn integral(&self) -> Int {
        self.coords[SPIN_DIM - 1].clone()
    }

    /// τ applied gradewise.
    pub fn tau(&self) -> Self {
        Self::new((0..SPIN_DIM).map(|i| int(tau_sign(degree(i)) as i64) * &self.coords[i]).collect())
    }

    pub fn to_json(&self) -> Value {
        json!(self.coords.iter().map(int_json).collect::<Vec<_>>())
    }
}

/// (s, t)_S = ∫ τ(s) ∧ t
pub fn pairing_s(s: &SpinorElement, t: &SpinorElement) -> Int {
    s.tau().wedge(t).integral()
}

pub fn spinor_gram() -> &'static IntMatrix {
    static G: OnceLock<IntMatrix> = OnceLock::new();
    G.get_or_init(|| {
        IntMatrix::from_fn(SPIN_DIM, SPIN_DIM, |i, j| {
            pairing_s(&SpinorElement::basis(subsets()[i]), &SpinorElement::basis(subsets()[j]))
        })
    })
}

pub fn v_gram() -> IntMatrix {
    IntMatrix::from_fn(V_DIM, V_DIM, |i, j| if i % 4 == j % 4 && i / 4 != j / 4 { int(1) } else { int(0) })
}

/// V with (a,b)_V = b₂(a₁) + a₂(b₁).
pub fn v_lattice() -> IntLattice {
    IntLattice::new("V", v_gram()).unwrap()
}

pub fn s_plus_lattice() -> IntLattice {
    let e = even_indices();
    IntLattice::new("S+", spinor_gram().submatrix(&e, &e)).unwrap()
}

pub fn s_minus_lattice() -> IntLattice {
    let o = odd_indices();
    IntLattice::new("S-", spinor_gram().submatrix(&o, &o)).unwrap()
}

pub fn v_vector(w: [i64; 4], theta: [i64; 4]) -> LatticeVector {
    let mut c = w.to_vec();
    c.extend_from_slice(&theta);
    LatticeVector::from_i64(&c)
}

/// Q(v) = (v,v)/2
pub fn quadratic_v(v: &LatticeVector) -> Int {
    (0..4).fold(Int::zero(), |acc, i| acc + &v.coords[i] * &v.coords[4 + i])
}

/// A signed partial permutation of the spinor basis: basis i ↦ sign·basis target, or 0.
#[derive(Clone, Debug, PartialEq, Eq)]
struct SignedMap(Vec<Option<(usize, i32)>>);

impl SignedMap {
    fn identity() -> Self {
        SignedMap((0..SPIN_DIM).map(|i| Some((i, 1))).collect())
    }

    /// self ∘ other
    fn after(&self, other: &Self) -> Self {
        SignedMap(
            other
                .0
                .iter()
                .map(|x| x.and_then(|(t, s)| self.0[t].map(|(u, s2)| (u, s * s2))))
                .collect(),
        )
    }

    fn to_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(SPIN_DIM, SPIN_DIM);
        for (src, img) in self.0.iter().enumerate() {
            if let Some((t, s)) = img {
                m.set(*t, src, int(*s as i64));
            }
        }
        m
    }
}

fn generator_map(k: usize) -> SignedMap {
    let masks = subsets();
    let i = (k % 4) as u8;
    let bit = 1u8 << i;
    SignedMap(
        (0..SPIN_DIM)
            .map(|src| {
                let s = masks[src];
                if k < 4 {
                    (s & bit == 0).then(|| (index_of(s | bit), wedge_sign(bit, s)))
                } else {
                    (s & bit != 0).then(|| {
                        let before = bits(s).iter().filter(|&&j| j < i).count();
                        (index_of(s & !bit), if before % 2 == 0 { 1 } else { -1 })
                    })
                }
            })
            .collect(),
    )
}

struct Tables {
    generators: Vec<IntMatrix>,
    monomials: Vec<SignedMap>,
    reversed: Vec<SignedMap>,
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let gens: Vec<SignedMap> = (0..V_DIM).map(generator_map).collect();
        let mut monomials = Vec::with_capacity(256);
        let mut reversed = Vec::with_capacity(256);
        for mask in 0u16..256 {
            let idx: Vec<usize> = (0..V_DIM).filter(|k| mask & (1 << k) != 0).collect();
            let mut fwd = SignedMap::identity();
            for &k in idx.iter().rev() {
                fwd = gens[k].after(&fwd);
            }
            let mut rev = SignedMap::identity();
            for &k in idx.iter() {
                rev = gens[k].after(&rev);
            }
            monomials.push(fwd);
            reversed.push(rev);
        }
        Tables { generators: gens.iter().map(SignedMap::to_matrix).collect(), monomials, reversed }
    })
}

/// m(e_k) for k = 0..8 (e₁..e₄ then e₁*..e₄*).
pub fn generator(k: usize) -> &'static IntMatrix {
    &tables().generators[k]
}

/// Monomial generators in increasing index, multiplied left to right.
pub fn monomial_matrix(mask: u8) -> IntMatrix {
    tables().monomials[mask as usize].to_matrix()
}

/// Product of the same generators in reverse order.
pub fn reversed_monomial_matrix(mask: u8) -> IntMatrix {
    tables().reversed[mask as usize].to_matrix()
}

fn combine(maps: &[SignedMap], coeffs: &[Int]) -> IntMatrix {
    let mut m = IntMatrix::zeros(SPIN_DIM, SPIN_DIM);
    for (c, map) in coeffs.iter().zip(maps) {
        if c.is_zero() {
            continue;
        }
        for (src, img) in map.0.iter().enumerate() {
            if let Some((t, s)) = img {
                let v = m.get(*t, src) + c * int(*s as i64);
                m.set(*t, src, v);
            }
        }
    }
    m
}

/// The parity operator (−1)^degree on S.
pub fn parity_operator() -> IntMatrix {
    IntMatrix::from_fn(SPIN_DIM, SPIN_DIM, |i, j| {
        if i == j {
            int(if degree(i).is_multiple_of(2) { 1 } else { -1 })
        } else {
            int(0)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElement {
    pub matrix: IntMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl CliffordElement {
    pub fn new(matrix: IntMatrix) -> Self {
        assert!(matrix.rows() == SPIN_DIM && matrix.cols() == SPIN_DIM, "Clifford elements are 16x16");
        CliffordElement { matrix }
    }

    pub fn one() -> Self {
        Self::new(IntMatrix::identity(SPIN_DIM))
    }

    pub fn scalar(c: i64) -> Self {
        Self::new(IntMatrix::identity(SPIN_DIM).scale(&int(c)))
    }

    pub fn embed(v: &LatticeVector) -> Self {
        clifford_embed(v)
    }

    pub fn multiply(&self, o: &Self) -> Self {
        Self::new(self.matrix.mul(&o.matrix))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.matrix.add(&o.matrix))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.matrix.neg())
    }

    pub fn act(&self, s: &SpinorElement) -> SpinorElement {
        SpinorElement::new(self.matrix.mul_vec(&s.coords))
    }

    pub fn from_monomials(coeffs: &[Int]) -> Self {
        assert_eq!(coeffs.len(), 256, "256 monomial coefficients expected");
        Self::new(combine(&tables().monomials, coeffs))
    }

    /// Coefficients c_I with x = Σ c_I·m(monomial_I).
    ///
    /// Monomial I∪J* acts as L_I∘D_J, so evaluating on e_S in order of increasing |S|
    /// isolates the coefficients with J = S one subset at a time.
    pub fn monomial_decompose(&self) -> Vec<Int> {
        let t = tables();
        let masks = subsets();
        let mut coeffs = vec![Int::zero(); 256];
        for src in 0..SPIN_DIM {
            let s = masks[src];
            let mut residual = self.matrix.col(src);
            for j in 0u8..16 {
                if j & s != j || j == s {
                    continue;
                }
                for i in 0u8..16 {
                    let mask = (i | (j << 4)) as usize;
                    if coeffs[mask].is_zero() {
                        continue;
                    }
                    if let Some((tgt, sign)) = t.monomials[mask].0[src] {
                        residual[tgt] -= &coeffs[mask] * int(sign as i64);
                    }
                }
            }
            for i in 0u8..16 {
                let mask = (i | (s << 4)) as usize;
                let (tgt, sign) = t.monomials[mask].0[src].map_or((usize::MAX, 0), |x| x);
                if sign == 0 {
                    continue;
                }
                coeffs[mask] = &residual[tgt] * int(sign as i64);
                residual[tgt] = Int::zero();
            }
            assert!(residual.iter().all(|x| x.is_zero()), "monomial decomposition left a residual");
        }
        coeffs
    }

    /// Main anti-automorphism: reverses each monomial.
    pub fn tau(&self) -> Self {
        Self::new(combine(&tables().reversed, &self.monomial_decompose()))
    }

    /// Main involution: conjugation by the parity operator.
    pub fn alpha(&self) -> Self {
        let p = parity_operator();
        Self::new(p.mul(&self.matrix).mul(&p))
    }

    pub fn star(&self) -> Self {
        self.alpha().tau()
    }

    pub fn parity(&self) -> Option<Parity> {
        let p = parity_operator();
        let conj = p.mul(&self.matrix).mul(&p);
        if conj == self.matrix {
            Some(Parity::Even)
        } else if conj == self.matrix.neg() {
            Some(Parity::Odd)
        } else {
            None
        }
    }

    /// The scalar c when the matrix is c·id.
    pub fn as_scalar(&self) -> Option<Int> {
        let c = self.matrix.get(0, 0).clone();
        (self.matrix == IntMatrix::identity(SPIN_DIM).scale(&c)).then_some(c)
    }

    pub fn to_json(&self) -> Value {
        matrix_json(&self.matrix)
    }
}

/// m(w, θ) = L_w + D_θ
pub fn clifford_embed(v: &LatticeVector) -> CliffordElement {
    assert_eq!(v.rank(), V_DIM, "V has rank 8");
    let mut m = IntMatrix::zeros(SPIN_DIM, SPIN_DIM);
    for k in 0..V_DIM {
        if !v.coords[k].is_zero() {
            m = m.add(&generator(k).scale(&v.coords[k]));
        }
    }
    CliffordElement::new(m)
}

pub fn act_vector(v: &LatticeVector, s: &SpinorElement) -> SpinorElement {
    clifford_embed(v).act(s)
}

/// The vector u with m(u) = c, if c lies in m(V).
pub fn extract_vector(c: &RatMatrix) -> Option<Vec<Rat>> {
    let gv = v_gram().to_rat();
    let f: Vec<Rat> = (0..V_DIM)
        .map(|j| {
            let g = generator(j).to_rat();
            c.mul(&g).add(&g.mul(c)).get(0, 0).clone()
        })
        .collect();
    let u = gv.mul_vec(&f);
    let mut rebuilt = RatMatrix::zeros(SPIN_DIM, SPIN_DIM);
    for (k, uk) in u.iter().enumerate() {
        if !uk.is_zero() {
            rebuilt = rebuilt.add(&generator(k).to_rat().scale(uk));
        }
    }
    (rebuilt == *c).then_some(u)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFlags {
    pub in_g: bool,
    pub in_pin: bool,
    pub in_spin: bool,
    pub in_g0: bool,
    /// x·τ(x) as a scalar.
    pub norm: Rat,
    /// x·x* as a scalar.
    pub orientation: Rat,
    pub parity: Parity,
    /// ρ(x): v ↦ x·v·x⁻¹ on V.
    pub rho: RatMatrix,
    pub rho_integral: bool,
}

impl GroupFlags {
    pub fn norm_sign(&self) -> i32 {
        if self.norm.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn ort_sign(&self) -> i32 {
        if self.orientation.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn rho_int(&self) -> Option<IntMatrix> {
        self.rho.to_int()
    }
}

fn scalar_of(m: &RatMatrix) -> Option<Rat> {
    let c = m.get(0, 0).clone();
    (*m == RatMatrix::identity(SPIN_DIM).scale(&c)).then_some(c)
}

/// Integer version of [`extract_vector`]: u with m(u) = c over ℤ.
fn extract_vector_int(c: &IntMatrix) -> Option<Vec<Int>> {
    let f: Vec<Int> = (0..V_DIM)
        .map(|j| {
            let g = generator(j);
            (0..SPIN_DIM).map(|k| c.get(0, k) * g.get(k, 0) + g.get(0, k) * c.get(k, 0)).sum()
        })
        .collect();
    let u = v_gram().mul_vec(&f);
    let mut rebuilt = IntMatrix::zeros(SPIN_DIM, SPIN_DIM);
    for (k, uk) in u.iter().enumerate() {
        if !uk.is_zero() {
            rebuilt = rebuilt.add(&generator(k).scale(uk));
        }
    }
    (rebuilt == *c).then_some(u)
}

/// When x·τ(x) = c ≠ 0, x⁻¹ = τ(x)/c and everything stays integral until the final division.
fn group_flags_unit(x: &CliffordElement, tx: &CliffordElement, c: &Int) -> Result<GroupFlags, CliffordError> {
    let mut cols = Vec::with_capacity(V_DIM);
    for k in 0..V_DIM {
        let conj = x.matrix.mul(generator(k)).mul(&tx.matrix);
        let u = extract_vector_int(&conj).ok_or(CliffordError::NotClifford)?;
        cols.push(u.iter().map(|a| Rat::new(a.clone(), c.clone())).collect());
    }
    let rho = RatMatrix::from_columns(V_DIM, &cols);
    let parity = x.parity().ok_or(CliffordError::MixedParity)?;
    let orientation = x.multiply(&tx.alpha()).as_scalar().ok_or(CliffordError::NotClifford)?;
    let norm = rat_scalar(c);
    let orientation = rat_scalar(&orientation);
    let in_pin = orientation.is_one();
    Ok(GroupFlags {
        in_g: true,
        in_pin,
        in_spin: in_pin && parity == Parity::Even,
        in_g0: norm.is_one(),
        norm,
        orientation,
        parity,
        rho_integral: rho.to_int().is_some(),
        rho,
    })
}

pub fn group_flags(x: &CliffordElement) -> Result<GroupFlags, CliffordError> {
    let tx = x.tau();
    if let Some(c) = x.multiply(&tx).as_scalar().filter(|c| !c.is_zero()) {
        return group_flags_unit(x, &tx, &c);
    }
    let xr = x.matrix.to_rat();
    let inv = xr.inverse().map_err(|_| CliffordError::NotInvertible)?;
    let mut cols = Vec::with_capacity(V_DIM);
    for k in 0..V_DIM {
        let c = xr.mul(&generator(k).to_rat()).mul(&inv);
        cols.push(extract_vector(&c).ok_or(CliffordError::NotClifford)?);
    }
    let rho = RatMatrix::from_columns(V_DIM, &cols);
    let parity = x.parity().ok_or(CliffordError::MixedParity)?;
    let norm = scalar_of(&x.multiply(&x.tau()).matrix.to_rat()).ok_or(CliffordError::NotClifford)?;
    let orientation = scalar_of(&x.multiply(&x.star()).matrix.to_rat()).ok_or(CliffordError::NotClifford)?;
    let in_pin = orientation.is_one();
    Ok(GroupFlags {
        in_g: true,
        in_pin,
        in_spin: in_pin && parity == Parity::Even,
        in_g0: norm.is_one(),
        norm,
        orientation,
        parity,
        rho_integral: rho.to_int().is_some(),
        rho,
    })
}

/// Matrix of m(v) restricted to S⁺ → S⁻ (8×8 in the even/odd coordinate orders).
pub fn plus_to_minus(v: &LatticeVector) -> IntMatrix {
    clifford_embed(v).matrix.submatrix(&odd_indices(), &even_indices())
}

pub fn minus_to_plus(v: &LatticeVector) -> IntMatrix {
    clifford_embed(v).matrix.submatrix(&even_indices(), &odd_indices())
}

pub fn rat_scalar(c: &Int) -> Rat {
    rat_from_int(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basis_order() {
        let m = subsets();
        assert_eq!(m[0], 0);
        assert_eq!(&m[1..5], &[1, 2, 4, 8]);
        assert_eq!(m[5], 0b0011);
        assert_eq!(m[15], 0b1111);
        assert_eq!(even_indices().len(), 8);
    }

    #[test]
    fn action_examples() {
        let e1 = v_vector([1, 0, 0, 0], [0; 4]);
        assert_eq!(act_vector(&e1, &SpinorElement::one()), SpinorElement::basis(0b0001));
        let th1 = v_vector([0; 4], [1, 0, 0, 0]);
        assert_eq!(act_vector(&th1, &SpinorElement::basis(0b0011)), SpinorElement::basis(0b0010));
        let image = act_vector(&th1, &SpinorElement::point());
        assert_eq!(image, SpinorElement::basis(0b1110));
        // the class e₂e₃e₄ pairs with x ∈ H¹ as −e₁*(x)
        for i in 0..4u8 {
            let x = SpinorElement::basis(1 << i);
            let expected = if i == 0 { -1 } else { 0 };
            assert_eq!(image.wedge(&x).integral(), int(expected));
        }
    }

    #[test]
    fn clifford_relation_on_basis() {
        let g = v_gram();
        for a in 0..V_DIM {
            for b in 0..V_DIM {
                let ab = generator(a).mul(generator(b)).add(&generator(b).mul(generator(a)));
                assert_eq!(ab, IntMatrix::identity(SPIN_DIM).scale(g.get(a, b)));
            }
        }
        let x1 = clifford_embed(&v_vector([1, 0, 0, 0], [1, 0, 0, 0]));
        assert!(x1.multiply(&x1).matrix.is_identity());
    }

    #[test]
    fn monomials_span_end_s() {
        let rows: Vec<Vec<Int>> = (0u16..256).map(|m| monomial_matrix(m as u8).entries().to_vec()).collect();
        assert_eq!(IntMatrix::from_rows(&rows).rank(), 256);
    }

    #[test]
    fn monomial_examples() {
        let c = CliffordElement::one().monomial_decompose();
        assert!(c[0].is_one() && c[1..].iter().all(|x| x.is_zero()));
        let c = CliffordElement::new(generator(0).clone()).monomial_decompose();
        assert!(c[1].is_one());
        assert_eq!(c.iter().filter(|x| !x.is_zero()).count(), 1);
    }

    #[test]
    fn pairing_examples() {
        let sn = SpinorElement::even_i64(1, [0; 6], -5);
        assert_eq!(pairing_s(&sn, &sn), int(-10));
        assert_eq!(pairing_s(&SpinorElement::one(), &SpinorElement::point()), int(1));
        assert!(spinor_gram().is_symmetric());
        assert!(s_plus_lattice().is_unimodular() && s_minus_lattice().is_unimodular());
        assert!(s_plus_lattice().is_even());
    }

    #[test]
    fn tau_examples() {
        for m in 0u8..16 {
            let l = CliffordElement::new(monomial_matrix(m));
            let d = m.count_ones();
            assert_eq!(l.tau(), CliffordElement::new(l.matrix.scale(&int(tau_sign(d) as i64))));
        }
        let e1 = CliffordElement::new(generator(0).clone());
        let e2 = CliffordElement::new(generator(1).clone());
        assert_eq!(e1.tau(), e1);
        assert_eq!(e1.multiply(&e2).tau(), e2.multiply(&e1));
        assert_eq!(e1.multiply(&e2).tau(), e1.multiply(&e2).neg());
    }

    #[test]
    fn group_flag_examples() {
        let x1 = clifford_embed(&v_vector([1, 0, 0, 0], [1, 0, 0, 0]));
        let f = group_flags(&x1).unwrap();
        assert!(f.in_g0 && !f.in_pin);
        assert_eq!(f.orientation, Rat::from_integer(int(-1)));
        let v = clifford_embed(&v_vector([1, 0, 0, 0], [-1, 0, 0, 0]));
        let f = group_flags(&v).unwrap();
        assert!(f.in_pin && !f.in_spin);
        let w = clifford_embed(&v_vector([0, 1, 0, 0], [0, -1, 0, 0]));
        let f = group_flags(&v.multiply(&w)).unwrap();
        assert!(f.in_spin);
        let bad = CliffordElement::one().add(&CliffordElement::new(generator(0).clone()));
        assert_eq!(group_flags(&bad).unwrap_err(), CliffordError::NotClifford);
    }

    fn v_strategy() -> impl Strategy<Value = LatticeVector> {
        proptest::collection::vec(-4i64..=4, 8).prop_map(|c| LatticeVector::from_i64(&c))
    }

    fn spinor_strategy() -> impl Strategy<Value = SpinorElement> {
        proptest::collection::vec(-4i64..=4, 16).prop_map(|c| SpinorElement::from_i64(&c))
    }

    fn clifford_strategy() -> impl Strategy<Value = CliffordElement> {
        proptest::collection::vec((0u16..256, -3i64..=3), 1..6).prop_map(|terms| {
            let mut c = vec![Int::zero(); 256];
            for (m, x) in terms {
                c[m as usize] += int(x);
            }
            CliffordElement::from_monomials(&c)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn clifford_relation(v in v_strategy(), w in v_strategy()) {
            let (mv, mw) = (clifford_embed(&v), clifford_embed(&w));
            let anti = mv.multiply(&mw).add(&mw.multiply(&mv));
            let vw = v_lattice().pairing(&v, &w).unwrap();
            prop_assert_eq!(anti.as_scalar(), Some(vw));
        }

        #[test]
        fn spinor_norm_scales(v in v_strategy(), s in spinor_strategy(), t in spinor_strategy()) {
            let m = clifford_embed(&v);
            prop_assert_eq!(pairing_s(&m.act(&s), &m.act(&t)), quadratic_v(&v) * pairing_s(&s, &t));
        }

        #[test]
        fn decomposition_round_trip(x in clifford_strategy()) {
            prop_assert_eq!(CliffordElement::from_monomials(&x.monomial_decompose()), x);
        }

        #[test]
        fn tau_alpha_laws(x in clifford_strategy(), y in clifford_strategy()) {
            prop_assert_eq!(x.tau().tau(), x.clone());
            prop_assert_eq!(x.alpha().alpha(), x.clone());
            prop_assert_eq!(x.multiply(&y).tau(), y.tau().multiply(&x.tau()));
            prop_assert_eq!(x.multiply(&y).alpha(), x.alpha().multiply(&y.alpha()));
        }

        #[test]
        fn tau_is_adjoint_for_pairing(x in clifford_strategy(), s in spinor_strategy(), t in spinor_strategy()) {
            prop_assert_eq!(pairing_s(&x.act(&s), &t), pairing_s(&s, &x.tau().act(&t)));
        }
    }
}
