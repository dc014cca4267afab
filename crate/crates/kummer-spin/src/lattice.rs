//! Integral lattices, reflections, the characters det, χ and ort, and discriminant groups.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact_linalg::{
    dot, rat_from_int, smith_normal_form, to_int_vec, to_rat_vec, Int, IntMatrix, Rat, RatMatrix,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("reflection vector must have square ±2, got {0}")]
    BadReflectionVector(Int),
    #[error("matrix is not an isometry of {0}")]
    NotIsometry(String),
    #[error("gram matrix is degenerate")]
    Degenerate,
    #[error("action on the discriminant group is not ±1")]
    NotPlusMinusOne,
    #[error("basis does not span a positive definite subspace")]
    NotPositiveDefinite,
    #[error("vectors do not span a saturated sublattice")]
    NotSaturated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    label: String,
    gram: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    pub coords: Vec<Int>,
}

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVector { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector { coords: coords.iter().map(|&c| Int::from(c)).collect() }
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector { coords: vec![Int::zero(); rank] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_primitive(&self) -> bool {
        crate::exact_linalg::content(&self.coords).is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        LatticeVector::new(self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        LatticeVector::new(self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Int) -> Self {
        LatticeVector::new(self.coords.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> Self {
        LatticeVector::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn to_json(&self) -> Value {
        json!(self.coords.iter().map(int_json).collect::<Vec<_>>())
    }
}

pub fn int_json(x: &Int) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn rat_json(x: &Rat) -> Value {
    if x.is_integer() {
        int_json(&x.to_integer())
    } else {
        json!(x.to_string())
    }
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    json!((0..m.rows()).map(|r| m.row(r).iter().map(int_json).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn rat_matrix_json(m: &RatMatrix) -> Value {
    json!((0..m.rows()).map(|r| m.row(r).iter().map(rat_json).collect::<Vec<_>>()).collect::<Vec<_>>())
}

impl IntLattice {
    pub fn new(label: impl Into<String>, gram: IntMatrix) -> Result<Self, LatticeError> {
        if !gram.is_square() || !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        Ok(IntLattice { label: label.into(), gram })
    }

    /// The hyperbolic plane U.
    pub fn hyperbolic() -> Self {
        IntLattice::new("U", IntMatrix::from_i64(2, 2, &[0, 1, 1, 0])).unwrap()
    }

    /// ⟨k⟩
    pub fn rank_one(k: i64) -> Self {
        IntLattice::new(format!("<{k}>"), IntMatrix::from_i64(1, 1, &[k])).unwrap()
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        IntLattice {
            label: format!("{}+{}", self.label, other.label),
            gram: IntMatrix::block_diag(&[&self.gram, &other.gram]),
        }
    }

    /// Same module with the form multiplied by -1.
    pub fn negated(&self) -> Self {
        IntLattice { label: format!("-({})", self.label), gram: self.gram.neg() }
    }

    /// Sublattice spanned by the given vectors, with the restricted form.
    pub fn sublattice(&self, label: impl Into<String>, basis: &[LatticeVector]) -> Self {
        let b = self.basis_matrix(basis);
        IntLattice { label: label.into(), gram: b.transpose().mul(&self.gram).mul(&b) }
    }

    pub fn basis_matrix(&self, basis: &[LatticeVector]) -> IntMatrix {
        let cols: Vec<Vec<Int>> = basis.iter().map(|v| v.coords.clone()).collect();
        IntMatrix::from_columns(self.rank(), &cols)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.get(i, i).is_even())
    }

    pub fn det(&self) -> Int {
        self.gram.det()
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn pairing(&self, x: &LatticeVector, y: &LatticeVector) -> Result<Int, LatticeError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.gram.bilinear(&x.coords, &y.coords))
    }

    pub fn square(&self, x: &LatticeVector) -> Result<Int, LatticeError> {
        self.pairing(x, x)
    }

    pub fn rat_pairing(&self, x: &[Rat], y: &[Rat]) -> Rat {
        self.gram.to_rat().bilinear(x, y)
    }

    fn check(&self, x: &LatticeVector) -> Result<(), LatticeError> {
        if x.rank() != self.rank() {
            return Err(LatticeError::RankMismatch { expected: self.rank(), got: x.rank() });
        }
        Ok(())
    }

    pub fn is_isometry(&self, m: &IntMatrix) -> bool {
        m.rows() == self.rank() && m.cols() == self.rank() && m.transpose().mul(&self.gram).mul(m) == self.gram
    }

    /// Vectors orthogonal to all of `vs`, as a basis of the saturated sublattice.
    pub fn orthogonal_complement(&self, vs: &[LatticeVector]) -> Vec<LatticeVector> {
        let rows: Vec<Vec<Int>> = vs.iter().map(|v| self.gram.mul_vec(&v.coords)).collect();
        let a = IntMatrix::from_rows(&rows);
        integer_kernel(&a).into_iter().map(LatticeVector::new).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({ "label": self.label, "gram": matrix_json(&self.gram) })
    }
}

/// A ℤ-basis of the integer kernel of `a`, read off from the Smith normal form.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<Int>> {
    let s = smith_normal_form(a);
    let nonzero = s.invariant_factors.iter().filter(|f| !f.is_zero()).count();
    (nonzero..a.cols()).map(|j| s.right.col(j)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIsometry {
    pub matrix: IntMatrix,
    pub lattice: String,
}

impl LatticeIsometry {
    pub fn new(l: &IntLattice, matrix: IntMatrix) -> Result<Self, LatticeError> {
        if !l.is_isometry(&matrix) {
            return Err(LatticeError::NotIsometry(l.label.clone()));
        }
        Ok(LatticeIsometry { matrix, lattice: l.label.clone() })
    }

    pub fn identity(l: &IntLattice) -> Self {
        LatticeIsometry { matrix: IntMatrix::identity(l.rank()), lattice: l.label.clone() }
    }

    pub fn compose(&self, other: &Self) -> Self {
        LatticeIsometry { matrix: self.matrix.mul(&other.matrix), lattice: self.lattice.clone() }
    }

    pub fn negate(&self) -> Self {
        LatticeIsometry { matrix: self.matrix.neg(), lattice: self.lattice.clone() }
    }

    pub fn apply(&self, x: &LatticeVector) -> LatticeVector {
        LatticeVector::new(self.matrix.mul_vec(&x.coords))
    }
}

/// R_u(x) = x − 2((x,u)/(u,u))·u for (u,u) = ±2.
pub fn reflection(l: &IntLattice, u: &LatticeVector) -> Result<LatticeIsometry, LatticeError> {
    let uu = l.square(u)?;
    let sign = if uu == Int::from(2) {
        Int::one()
    } else if uu == Int::from(-2) {
        -Int::one()
    } else {
        return Err(LatticeError::BadReflectionVector(uu));
    };
    let gu = l.gram.mul_vec(&u.coords);
    let n = l.rank();
    let m = IntMatrix::from_fn(n, n, |r, c| {
        let id = if r == c { Int::one() } else { Int::zero() };
        id - &sign * &u.coords[r] * &gu[c]
    });
    LatticeIsometry::new(l, m)
}

/// r_u := ((u,u)/−2)·R_u
pub fn signed_reflection(l: &IntLattice, u: &LatticeVector) -> Result<LatticeIsometry, LatticeError> {
    let r = reflection(l, u)?;
    if l.square(u)? == Int::from(2) {
        Ok(r.negate())
    } else {
        Ok(r)
    }
}

pub fn det_character(g: &LatticeIsometry) -> i32 {
    if g.matrix.det().is_positive() {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantGroup {
    /// Invariant factors larger than 1.
    pub factors: Vec<Int>,
    /// One lift in L⊗ℚ per factor, in lattice coordinates.
    pub lifts: Vec<Vec<Rat>>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> Int {
        self.factors.iter().fold(Int::one(), |a, b| a * b)
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn exponent(&self) -> Int {
        self.factors.iter().fold(Int::one(), |a, b| a.lcm(b))
    }
}

pub fn discriminant_group(l: &IntLattice) -> Result<DiscriminantGroup, LatticeError> {
    if l.det().is_zero() {
        return Err(LatticeError::Degenerate);
    }
    let s = smith_normal_form(&l.gram);
    let g_inv = l.gram.to_rat().inverse().map_err(|_| LatticeError::Degenerate)?;
    let u_inv = s.left.to_rat().inverse().map_err(|_| LatticeError::Degenerate)?;
    let lift_basis = g_inv.mul(&u_inv);
    let mut factors = Vec::new();
    let mut lifts = Vec::new();
    for (i, f) in s.invariant_factors.iter().enumerate() {
        if !f.is_one() {
            factors.push(f.clone());
            lifts.push(lift_basis.col(i));
        }
    }
    Ok(DiscriminantGroup { factors, lifts })
}

fn is_integral(v: &[Rat]) -> bool {
    to_int_vec(v).is_some()
}

/// Sign by which g acts on L*/L.
pub fn chi_character(l: &IntLattice, g: &LatticeIsometry) -> Result<i32, LatticeError> {
    let disc = discriminant_group(l)?;
    let m = g.matrix.to_rat();
    let images: Vec<Vec<Rat>> = disc.lifts.iter().map(|x| m.mul_vec(x)).collect();
    for eps in [1i64, -1] {
        let e = Rat::from_integer(Int::from(eps));
        let ok = disc.lifts.iter().zip(&images).all(|(x, gx)| {
            let diff: Vec<Rat> = gx.iter().zip(x).map(|(a, b)| a - &e * b).collect();
            is_integral(&diff)
        });
        if ok {
            return Ok(eps as i32);
        }
    }
    Err(LatticeError::NotPlusMinusOne)
}

/// A maximal positive definite subspace from rational Gram–Schmidt diagonalization.
pub fn positive_basis(l: &IntLattice) -> Vec<Vec<Rat>> {
    let g = l.gram.to_rat();
    let n = l.rank();
    let mut pending: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    let mut positive = Vec::new();
    while !pending.is_empty() {
        let pick = pending.iter().position(|v| !g.bilinear(v, v).is_zero());
        let v = match pick {
            Some(i) => pending.remove(i),
            None => {
                let mut found = None;
                'outer: for i in 0..pending.len() {
                    for j in i + 1..pending.len() {
                        if !g.bilinear(&pending[i], &pending[j]).is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = found else {
                    break;
                };
                let s: Vec<Rat> = pending[i].iter().zip(&pending[j]).map(|(a, b)| a + b).collect();
                pending.remove(i);
                s
            }
        };
        let vv = g.bilinear(&v, &v);
        for w in pending.iter_mut() {
            let f = g.bilinear(w, &v) / &vv;
            for (a, b) in w.iter_mut().zip(&v) {
                *a -= &f * b;
            }
        }
        if vv.is_positive() {
            positive.push(v);
        }
    }
    positive
}

fn leading_minors_positive(m: &RatMatrix) -> bool {
    (1..=m.rows()).all(|k| m.block(0, 0, k, k).det().is_positive())
}

/// Sign of det(π∘g) on a positive definite subspace, π the orthogonal projection onto it.
pub fn ort_character(
    l: &IntLattice,
    g: &LatticeIsometry,
    positive_basis: &[Vec<Rat>],
) -> Result<i32, LatticeError> {
    let gram = l.gram.to_rat();
    let b = RatMatrix::from_columns(l.rank(), positive_basis);
    let bgb = b.transpose().mul(&gram).mul(&b);
    if positive_basis.is_empty() || !leading_minors_positive(&bgb) {
        return Err(LatticeError::NotPositiveDefinite);
    }
    let gb = g.matrix.to_rat().mul(&b);
    let coeffs = bgb.inverse().map_err(|_| LatticeError::NotPositiveDefinite)?.mul(&b.transpose()).mul(&gram).mul(&gb);
    let d = coeffs.det();
    Ok(if d.is_positive() { 1 } else { -1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharacterTriple {
    pub det: i32,
    pub chi: i32,
    pub ort: i32,
}

pub fn characters(l: &IntLattice, g: &LatticeIsometry) -> Result<CharacterTriple, LatticeError> {
    Ok(CharacterTriple {
        det: det_character(g),
        chi: chi_character(l, g)?,
        ort: ort_character(l, g, &positive_basis(l))?,
    })
}

/// Coordinates of `v` in the basis `b` (columns), when `v` lies in their ℤ-span.
pub fn coordinates_in(b: &IntMatrix, v: &[Int]) -> Option<Vec<Int>> {
    let x = b.to_rat().solve(&to_rat_vec(v))?;
    if b.to_rat().mul_vec(&x) != to_rat_vec(v) {
        return None;
    }
    to_int_vec(&x)
}

/// Matrix of `g` (acting on the ambient lattice) restricted to the span of the columns of `b`.
pub fn restrict_to(b: &IntMatrix, g: &IntMatrix) -> Result<IntMatrix, LatticeError> {
    let gb = g.mul(b);
    let cols: Option<Vec<Vec<Int>>> = (0..b.cols()).map(|j| coordinates_in(b, &gb.col(j))).collect();
    cols.map(|c| IntMatrix::from_columns(b.cols(), &c)).ok_or(LatticeError::NotSaturated)
}

pub fn rat_dot(x: &[Rat], y: &[Rat]) -> Rat {
    dot(x, y)
}

pub fn int_to_rat(x: &Int) -> Rat {
    rat_from_int(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::int;
    use proptest::prelude::*;

    fn u4() -> IntLattice {
        let u = IntLattice::hyperbolic();
        u.direct_sum(&u).direct_sum(&u).direct_sum(&u)
    }

    #[test]
    fn reflection_swaps_hyperbolic_basis() {
        let u = IntLattice::hyperbolic();
        let r = reflection(&u, &LatticeVector::from_i64(&[1, -1])).unwrap();
        assert_eq!(r.apply(&LatticeVector::from_i64(&[1, 0])), LatticeVector::from_i64(&[0, 1]));
        assert_eq!(r.apply(&LatticeVector::from_i64(&[0, 1])), LatticeVector::from_i64(&[1, 0]));
    }

    #[test]
    fn reflection_rejects_bad_square() {
        let u = IntLattice::hyperbolic();
        assert!(matches!(
            reflection(&u, &LatticeVector::from_i64(&[1, 2])),
            Err(LatticeError::BadReflectionVector(_))
        ));
    }

    #[test]
    fn discriminant_examples() {
        assert!(discriminant_group(&IntLattice::hyperbolic()).unwrap().factors.is_empty());
        let d = discriminant_group(&IntLattice::rank_one(-6)).unwrap();
        assert_eq!(d.factors, vec![int(6)]);
        let d = discriminant_group(&IntLattice::rank_one(-4).direct_sum(&IntLattice::hyperbolic())).unwrap();
        assert_eq!(d.order(), int(4));
        assert!(d.is_cyclic());
    }

    #[test]
    fn signed_reflection_characters() {
        let l = IntLattice::rank_one(-6).direct_sum(&u4());
        let minus = LatticeVector::from_i64(&[0, 1, -1, 0, 0, 0, 0, 0, 0]);
        let plus = LatticeVector::from_i64(&[0, 1, 1, 0, 0, 0, 0, 0, 0]);
        let rm = signed_reflection(&l, &minus).unwrap();
        let rp = signed_reflection(&l, &plus).unwrap();
        assert_eq!((det_character(&rm), chi_character(&l, &rm).unwrap()), (-1, 1));
        assert_eq!((det_character(&rp), chi_character(&l, &rp).unwrap()), (1, -1));
        let id = LatticeIsometry::identity(&l);
        assert_eq!(characters(&l, &id).unwrap(), CharacterTriple { det: 1, chi: 1, ort: 1 });
    }

    #[test]
    fn ort_on_u4() {
        let l = u4();
        let pb = positive_basis(&l);
        assert_eq!(pb.len(), 4);
        let minus_id = LatticeIsometry::new(&l, IntMatrix::identity(8).neg()).unwrap();
        assert_eq!(ort_character(&l, &minus_id, &pb).unwrap(), 1);
        let rneg = reflection(&l, &LatticeVector::from_i64(&[1, -1, 0, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(ort_character(&l, &rneg, &pb).unwrap(), 1);
        let rpos = reflection(&l, &LatticeVector::from_i64(&[1, 1, 0, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(ort_character(&l, &rpos, &pb).unwrap(), -1);
        let bad = vec![pb[0].clone(), pb[0].iter().map(|x| -x).collect()];
        assert_eq!(ort_character(&l, &rpos, &bad), Err(LatticeError::NotPositiveDefinite));
    }

    #[test]
    fn orthogonal_complement_of_isotropic_pair() {
        let l = u4();
        let v = LatticeVector::from_i64(&[1, -3, 0, 0, 0, 0, 0, 0]);
        let c = l.orthogonal_complement(std::slice::from_ref(&v));
        assert_eq!(c.len(), 7);
        for x in &c {
            assert!(l.pairing(x, &v).unwrap().is_zero());
        }
        let sub = l.sublattice("v-perp", &c);
        assert_eq!(discriminant_group(&sub).unwrap().order(), int(6));
    }

    fn pm2_vector() -> impl Strategy<Value = (LatticeVector, i64)> {
        // (a, b) in one U summand with ab = ±1, plus an isotropic tail in another summand.
        (0usize..4, prop::bool::ANY, prop::bool::ANY, -3i64..=3).prop_map(|(slot, plus, flip, t)| {
            let mut c = vec![0i64; 8];
            let (a, b) = if plus { (1, 1) } else { (1, -1) };
            let (a, b) = if flip { (-a, -b) } else { (a, b) };
            c[2 * slot] = a;
            c[2 * slot + 1] = b;
            let other = (slot + 1) % 4;
            c[2 * other] = t;
            (LatticeVector::from_i64(&c), if plus { 2 } else { -2 })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn reflections_are_involutions((u, sq) in pm2_vector(), x in proptest::collection::vec(-5i64..=5, 8)) {
            let l = u4();
            prop_assert_eq!(l.square(&u).unwrap(), int(sq));
            let r = reflection(&l, &u).unwrap();
            prop_assert!(r.compose(&r).matrix.is_identity());
            prop_assert_eq!(r.apply(&u), u.neg());
            let x = LatticeVector::from_i64(&x);
            if l.pairing(&x, &u).unwrap().is_zero() {
                prop_assert_eq!(r.apply(&x), x);
            }
        }

        #[test]
        fn ort_multiplicative_and_basis_free(word in proptest::collection::vec(pm2_vector(), 1..5)) {
            let l = u4();
            let pb = positive_basis(&l);
            // a second positive basis, obtained by mixing the first
            let mut pb2 = pb.clone();
            for i in 1..pb2.len() {
                let prev = pb2[i - 1].clone();
                for (a, b) in pb2[i].iter_mut().zip(&prev) {
                    *a += b;
                }
            }
            let mut acc = LatticeIsometry::identity(&l);
            let mut expected = 1;
            for (u, _) in &word {
                let r = reflection(&l, u).unwrap();
                expected *= ort_character(&l, &r, &pb).unwrap();
                acc = acc.compose(&r);
            }
            prop_assert_eq!(ort_character(&l, &acc, &pb).unwrap(), expected);
            prop_assert_eq!(ort_character(&l, &acc, &pb2).unwrap(), expected);
        }
    }
}
