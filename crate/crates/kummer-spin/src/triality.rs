//! The algebra A_X = V ⊕ S⁻ ⊕ S⁺, its triality automorphism J and the elements m̃.
//!
//! Coordinates on A_X: V in 0..8, S⁻ in 8..16 (w then β), S⁺ in 16..24 (r, H, s).

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact_linalg::{int, rat_from_int, to_int_vec, to_rat_vec, Int, IntMatrix, Rat, RatMatrix};
use crate::lattice::{rat_matrix_json, IntLattice, LatticeVector};
use crate::spinor::{
    clifford_embed, even_indices, generator, group_flags, minus_to_plus, odd_indices, parity_operator,
    plus_to_minus, s_minus_lattice, s_plus_lattice, v_gram, v_vector, CliffordElement, CliffordError,
    SpinorElement, SPIN_DIM, V_DIM,
};

pub const AX_DIM: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrialityError {
    #[error("element is not in G0(V)")]
    NotInG0,
    #[error("element is not in Spin(V)")]
    NotInSpin,
    #[error("vector must have square ±2 in S+, got {0}")]
    BadSquare(Int),
    #[error("the two vectors must have squares of the same sign")]
    SignMismatch,
    #[error("triality conjugate left the image of Spin(V)")]
    OuterImage,
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    V,
    SMinus,
    SPlus,
}

impl Block {
    pub const ALL: [Block; 3] = [Block::V, Block::SMinus, Block::SPlus];

    pub fn offset(self) -> usize {
        match self {
            Block::V => 0,
            Block::SMinus => 8,
            Block::SPlus => 16,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Block::V => "V",
            Block::SMinus => "S-",
            Block::SPlus => "S+",
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AXElement {
    pub v: Vec<Int>,
    pub s_minus: Vec<Int>,
    pub s_plus: Vec<Int>,
}

impl AXElement {
    pub fn zero() -> Self {
        AXElement { v: vec![Int::zero(); 8], s_minus: vec![Int::zero(); 8], s_plus: vec![Int::zero(); 8] }
    }

    pub fn from_coords(c: &[Int]) -> Self {
        assert_eq!(c.len(), AX_DIM, "A_X has 24 coordinates");
        AXElement { v: c[0..8].to_vec(), s_minus: c[8..16].to_vec(), s_plus: c[16..24].to_vec() }
    }

    pub fn coords(&self) -> Vec<Int> {
        let mut c = self.v.clone();
        c.extend_from_slice(&self.s_minus);
        c.extend_from_slice(&self.s_plus);
        c
    }

    pub fn basis(i: usize) -> Self {
        let mut c = vec![Int::zero(); AX_DIM];
        c[i] = Int::one();
        Self::from_coords(&c)
    }

    pub fn from_v(v: &LatticeVector) -> Self {
        AXElement { v: v.coords.clone(), ..Self::zero() }
    }

    pub fn from_s_plus(s: &SpinorElement) -> Self {
        AXElement { s_plus: s.s_plus_coords(), ..Self::zero() }
    }

    pub fn from_s_minus(s: &SpinorElement) -> Self {
        AXElement { s_minus: s.s_minus_coords(), ..Self::zero() }
    }
}

struct ProductTables {
    p2m: Vec<IntMatrix>,
    m2p: Vec<IntMatrix>,
    g_minus: IntMatrix,
    /// Products of basis elements, sparse.
    structure: Vec<Vec<Vec<(usize, Int)>>>,
}

fn product_tables() -> &'static ProductTables {
    static T: OnceLock<ProductTables> = OnceLock::new();
    T.get_or_init(|| {
        let basis_v = |k: usize| {
            let mut c = [0i64; 8];
            c[k] = 1;
            LatticeVector::from_i64(&c)
        };
        let p2m: Vec<IntMatrix> = (0..V_DIM).map(|k| plus_to_minus(&basis_v(k))).collect();
        let m2p: Vec<IntMatrix> = (0..V_DIM).map(|k| minus_to_plus(&basis_v(k))).collect();
        let g_minus = s_minus_lattice().gram().clone();
        let mut t = ProductTables { p2m, m2p, g_minus, structure: Vec::new() };
        let mut structure = vec![vec![Vec::new(); AX_DIM]; AX_DIM];
        for i in 0..AX_DIM {
            for j in 0..AX_DIM {
                let p = product_direct(&t, &AXElement::basis(i), &AXElement::basis(j)).coords();
                structure[i][j] = p.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
            }
        }
        t.structure = structure;
        t
    })
}

/// The vector u ∈ V with (u, x)_V = (x·s, t)_{S⁻} for all x.
fn mu(t: &ProductTables, s_plus: &[Int], s_minus: &[Int]) -> Vec<Int> {
    let gt = t.g_minus.mul_vec(s_minus);
    let f: Vec<Int> = (0..V_DIM)
        .map(|k| {
            let xs = t.p2m[k].mul_vec(s_plus);
            xs.iter().zip(&gt).fold(Int::zero(), |a, (x, y)| a + x * y)
        })
        .collect();
    v_gram().mul_vec(&f)
}

fn act(mats: &[IntMatrix], v: &[Int], x: &[Int]) -> Vec<Int> {
    let mut out = vec![Int::zero(); 8];
    for (k, vk) in v.iter().enumerate() {
        if vk.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(mats[k].mul_vec(x)) {
            *o += vk * y;
        }
    }
    out
}

fn add8(a: Vec<Int>, b: Vec<Int>) -> Vec<Int> {
    a.into_iter().zip(b).map(|(x, y)| x + y).collect()
}

fn product_direct(t: &ProductTables, a: &AXElement, b: &AXElement) -> AXElement {
    AXElement {
        v: add8(mu(t, &a.s_plus, &b.s_minus), mu(t, &b.s_plus, &a.s_minus)),
        s_minus: add8(act(&t.p2m, &a.v, &b.s_plus), act(&t.p2m, &b.v, &a.s_plus)),
        s_plus: add8(act(&t.m2p, &a.v, &b.s_minus), act(&t.m2p, &b.v, &a.s_minus)),
    }
}

/// The commutative product of A_X.
pub fn ax_product(a: &AXElement, b: &AXElement) -> AXElement {
    product_direct(product_tables(), a, b)
}

/// Product of rational coordinate vectors through the structure constants.
pub fn ax_product_rat(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let t = product_tables();
    let mut out = vec![Rat::zero(); AX_DIM];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let ab = ai * bj;
            for (k, c) in &t.structure[i][j] {
                out[*k] += &ab * rat_from_int(c);
            }
        }
    }
    out
}

/// Gram matrix of A_X: the orthogonal sum of V, S⁻ and S⁺.
pub fn ax_gram() -> IntMatrix {
    IntMatrix::block_diag(&[&v_gram(), s_minus_lattice().gram(), s_plus_lattice().gram()])
}

pub fn ax_lattice() -> IntLattice {
    IntLattice::new("A_X", ax_gram()).unwrap()
}

/// 24×24 matrix of b ↦ a·b.
pub fn multiplication_matrix(a: &AXElement) -> IntMatrix {
    let cols: Vec<Vec<Int>> = (0..AX_DIM).map(|j| ax_product(a, &AXElement::basis(j)).coords()).collect();
    IntMatrix::from_columns(AX_DIM, &cols)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AXFlags {
    pub is_isometry: bool,
    pub is_algebra_automorphism: bool,
    /// Image block of V, S⁻, S⁺ when each summand lands in a single summand.
    pub block_permutation: Option<[Block; 3]>,
}

#[derive(Clone, Debug)]
pub struct AXAutomorphism {
    pub matrix: RatMatrix,
    flags: OnceLock<AXFlags>,
}

impl PartialEq for AXAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl AXAutomorphism {
    pub fn new(matrix: RatMatrix) -> Self {
        assert!(matrix.rows() == AX_DIM && matrix.cols() == AX_DIM, "A_X maps are 24x24");
        AXAutomorphism { matrix, flags: OnceLock::new() }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        Self::new(m.to_rat())
    }

    pub fn identity() -> Self {
        Self::new(RatMatrix::identity(AX_DIM))
    }

    pub fn from_blocks(v: &RatMatrix, s_minus: &RatMatrix, s_plus: &RatMatrix) -> Self {
        Self::new(RatMatrix::block_diag(&[v, s_minus, s_plus]))
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::new(self.matrix.mul(&other.matrix))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.matrix.neg())
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.matrix.inverse().expect("A_X automorphism must be invertible"))
    }

    pub fn block(&self, to: Block, from: Block) -> RatMatrix {
        self.matrix.block(to.offset(), from.offset(), 8, 8)
    }

    pub fn set_block(&mut self, to: Block, from: Block, b: &RatMatrix) {
        self.matrix.set_block(to.offset(), from.offset(), b);
        self.flags = OnceLock::new();
    }

    pub fn apply(&self, a: &AXElement) -> Vec<Rat> {
        self.matrix.mul_vec(&to_rat_vec(&a.coords()))
    }

    pub fn apply_int(&self, a: &AXElement) -> Option<AXElement> {
        to_int_vec(&self.apply(a)).map(|c| AXElement::from_coords(&c))
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        self.matrix.to_int()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn flags(&self) -> &AXFlags {
        self.flags.get_or_init(|| AXFlags {
            is_isometry: self.check_isometry(),
            is_algebra_automorphism: self.check_product(),
            block_permutation: self.check_blocks(),
        })
    }

    fn check_isometry(&self) -> bool {
        let g = ax_gram().to_rat();
        self.matrix.transpose().mul(&g).mul(&self.matrix) == g
    }

    /// M(e_i·e_j) = M(e_i)·M(e_j) on all ordered basis pairs.
    fn check_product(&self) -> bool {
        let t = product_tables();
        let cols: Vec<Vec<Rat>> = (0..AX_DIM).map(|j| self.matrix.col(j)).collect();
        for i in 0..AX_DIM {
            for j in i..AX_DIM {
                let mut lhs = vec![Rat::zero(); AX_DIM];
                for (k, c) in &t.structure[i][j] {
                    for (l, x) in lhs.iter_mut().enumerate() {
                        let m = self.matrix.get(l, *k);
                        if !m.is_zero() {
                            *x += m * rat_from_int(c);
                        }
                    }
                }
                if lhs != ax_product_rat(&cols[i], &cols[j]) {
                    return false;
                }
            }
        }
        true
    }

    fn check_blocks(&self) -> Option<[Block; 3]> {
        let mut out = [Block::V; 3];
        for (n, from) in Block::ALL.iter().enumerate() {
            let targets: Vec<Block> =
                Block::ALL.iter().copied().filter(|to| !self.block(*to, *from).is_zero()).collect();
            match targets.as_slice() {
                [t] => out[n] = *t,
                _ => return None,
            }
        }
        Some(out)
    }

    pub fn to_json(&self) -> Value {
        let f = self.flags();
        json!({
            "matrix": rat_matrix_json(&self.matrix),
            "is_isometry": f.is_isometry,
            "is_algebra_automorphism": f.is_algebra_automorphism,
            "block_permutation": f.block_permutation.map(|b| b.iter().map(|x| x.name()).collect::<Vec<_>>()),
        })
    }
}

/// Conjugates a 16×16 matrix on S into the S⁻ ⊕ S⁺ coordinates of A_X.
fn spinor_block(m: &IntMatrix) -> IntMatrix {
    let mut order = odd_indices();
    order.extend(even_indices());
    m.submatrix(&order, &order)
}

/// μ̃(g) = (ρ(g), m(g)) for g ∈ G₀(V).
pub fn mu_tilde(g: &CliffordElement) -> Result<AXAutomorphism, TrialityError> {
    let f = group_flags(g)?;
    if !f.in_g0 {
        return Err(TrialityError::NotInG0);
    }
    let mut m = RatMatrix::zeros(AX_DIM, AX_DIM);
    m.set_block(0, 0, &f.rho);
    m.set_block(8, 8, &spinor_block(&g.matrix).to_rat());
    Ok(AXAutomorphism::new(m))
}

/// Reflection R_y on S⁺ for (y,y) = ±2.
pub fn s_plus_reflection(y: &SpinorElement) -> Result<IntMatrix, TrialityError> {
    let l = s_plus_lattice();
    let yv = LatticeVector::new(y.s_plus_coords());
    crate::lattice::reflection(&l, &yv)
        .map(|r| r.matrix)
        .map_err(|_| TrialityError::BadSquare(l.square(&yv).unwrap()))
}

pub fn s_plus_square(y: &SpinorElement) -> Int {
    let yv = LatticeVector::new(y.s_plus_coords());
    s_plus_lattice().square(&yv).unwrap()
}

/// Multiplication by y ∈ S⁺ as a 16×16 map of V ⊕ S⁻ (V first).
pub fn m_y(y: &SpinorElement) -> IntMatrix {
    let m = multiplication_matrix(&AXElement::from_s_plus(y));
    m.block(0, 0, 16, 16)
}

/// m̃_y: m_y on V ⊕ S⁻ and −R_y on S⁺, for (y,y) = ±2.
pub fn m_tilde(y: &SpinorElement) -> Result<AXAutomorphism, TrialityError> {
    let r = s_plus_reflection(y)?;
    let mut m = IntMatrix::zeros(AX_DIM, AX_DIM);
    m.set_block(0, 0, &m_y(y));
    m.set_block(16, 16, &r.neg());
    Ok(AXAutomorphism::from_int(&m))
}

/// m̃_{y₁}∘m̃_{y₂}: m_{y₁}∘m_{y₂} on V ⊕ S⁻ and R_{y₁}∘R_{y₂} on S⁺, squares of equal sign.
pub fn m_tilde_pair(y1: &SpinorElement, y2: &SpinorElement) -> Result<AXAutomorphism, TrialityError> {
    let (a, b) = (s_plus_square(y1), s_plus_square(y2));
    for q in [&a, &b] {
        if q.clone() != int(2) && q.clone() != int(-2) {
            return Err(TrialityError::BadSquare(q.clone()));
        }
    }
    if a != b {
        return Err(TrialityError::SignMismatch);
    }
    Ok(m_tilde(y1)?.compose(&m_tilde(y2)?))
}

/// The same composite without the equal-sign requirement.
pub fn m_tilde_mixed_pair(y1: &SpinorElement, y2: &SpinorElement) -> Result<AXAutomorphism, TrialityError> {
    Ok(m_tilde(y1)?.compose(&m_tilde(y2)?))
}

pub fn x1() -> LatticeVector {
    v_vector([1, 0, 0, 0], [1, 0, 0, 0])
}

pub fn u1() -> SpinorElement {
    SpinorElement::even_i64(1, [0; 6], 1)
}

/// J = μ̃(x₁)∘t with t built from u₁ = (1,0,1).
pub fn build_j() -> AXAutomorphism {
    static J: OnceLock<AXAutomorphism> = OnceLock::new();
    J.get_or_init(|| {
        let u = u1();
        let mut t = IntMatrix::zeros(AX_DIM, AX_DIM);
        t.set_block(0, 0, &m_y(&u));
        t.set_block(16, 16, &s_plus_reflection(&u).unwrap().neg());
        let mx = mu_tilde(&clifford_embed(&x1())).expect("x1 lies in G0");
        let j = mx.compose(&AXAutomorphism::from_int(&t));
        let _ = j.flags();
        j
    })
    .clone()
}

/// j(g) = J⁻¹·μ̃(g)·J
pub fn outer_j(g: &CliffordElement) -> Result<AXAutomorphism, TrialityError> {
    let f = group_flags(g)?;
    if !f.in_spin {
        return Err(TrialityError::NotInSpin);
    }
    let j = build_j();
    let out = j.inverse().compose(&mu_tilde(g)?).compose(&j);
    let flags = out.flags();
    let fixed_blocks = flags.block_permutation == Some([Block::V, Block::SMinus, Block::SPlus]);
    if !(fixed_blocks && flags.is_algebra_automorphism && flags.is_isometry) {
        return Err(TrialityError::OuterImage);
    }
    Ok(out)
}

/// The central element α̃ ∈ Spin(V), realized by the parity operator on S.
/// Ad_J(μ̃(g)) = J·μ̃(g)·J⁻¹, the transport of μ̃(g) to the S⁺ side.
pub fn ad_j(a: &AXAutomorphism) -> AXAutomorphism {
    let j = build_j();
    j.compose(a).compose(&j.inverse())
}

pub fn tilde_alpha_element() -> CliffordElement {
    CliffordElement::new(parity_operator())
}

pub fn tilde_alpha() -> AXAutomorphism {
    mu_tilde(&tilde_alpha_element()).expect("parity operator lies in Spin")
}

pub fn minus_one() -> AXAutomorphism {
    mu_tilde(&CliffordElement::scalar(-1)).expect("-1 lies in Spin")
}

/// s₁ = (1,0,−1), s₂ = (1,0,1)
pub fn tau_vectors() -> (SpinorElement, SpinorElement) {
    (SpinorElement::even_i64(1, [0; 6], -1), SpinorElement::even_i64(1, [0; 6], 1))
}

/// τ̃ := −α̃·m̃_{s₁·s₂}
pub fn tilde_tau() -> AXAutomorphism {
    let (s1, s2) = tau_vectors();
    let m = m_tilde_mixed_pair(&s1, &s2).expect("s1, s2 have squares -2, 2");
    minus_one().compose(&tilde_alpha()).compose(&m)
}

/// Factor by which an automorphism scales the pairing on V ⊕ S⁻, if it does.
pub fn v_sminus_scale(g: &AXAutomorphism) -> Option<Rat> {
    let g16 = g.matrix.block(0, 0, 16, 16);
    let gram = IntMatrix::block_diag(&[&v_gram(), s_minus_lattice().gram()]).to_rat();
    let lhs = g16.transpose().mul(&gram).mul(&g16);
    for c in [Rat::one(), -Rat::one()] {
        if lhs == gram.scale(&c) {
            return Some(c);
        }
    }
    None
}

pub fn spinor_dim() -> usize {
    SPIN_DIM
}

pub fn basis_generator(k: usize) -> &'static IntMatrix {
    generator(k)
}
