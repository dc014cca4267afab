//! Generators of the stabilizer of s_n = (1,0,−n) ∈ S⁺, their monodromy action on s_n^⊥,
//! the mod n representation on H¹(X,ℤ/n) and the cokernel Γ_w of m_w: V → S⁻.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngExt};
use serde_json::json;
use thiserror::Error;

use crate::exact_linalg::{int, smith_normal_form, Int, IntMatrix};
use crate::lattice::{
    characters, chi_character, det_character, discriminant_group, matrix_json, restrict_to, signed_reflection,
    IntLattice, LatticeError, LatticeIsometry, LatticeVector,
};
use crate::report::Check;
use crate::spinor::{s_minus_lattice, s_plus_lattice, subsets, v_gram, CliffordElement, SpinorElement, SPIN_DIM};
use crate::triality::{
    m_tilde_pair, minus_one, multiplication_matrix, mu_tilde, tilde_alpha, tilde_tau, v_sminus_scale,
    AXAutomorphism, AXElement, Block, TrialityError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilizerError {
    #[error("matrix has determinant {0}, expected 1")]
    DetNotOne(Int),
    #[error("(t,t) = {0}, expected ±2")]
    BadSquare(Int),
    #[error("class is not primitive")]
    NotPrimitive,
    #[error("∫A² = {found}, expected {expected}")]
    WrongSelfIntersection { found: Int, expected: Int },
    #[error("H¹(ℤ/n)* is not invariant")]
    NotInvariant,
    #[error("element does not preserve s_n up to its contract sign")]
    NotStabilizing,
    #[error("the V ⊕ S⁻ pairing is not scaled by ±1")]
    NoScale,
    #[error("n must be at least {0}")]
    SmallN(u32),
    #[error("w has square {0}, expected {1}")]
    WrongSquare(Int, Int),
    #[error(transparent)]
    Triality(#[from] TrialityError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorKind {
    Sl4(IntMatrix),
    PairReflection { a1: Vec<Int>, a2: Vec<Int>, n: u32 },
    SpinorPair { t1: SpinorElement, t2: SpinorElement },
    TildeTau,
    TildeAlpha,
    MinusOne,
    Product(Vec<GeneratorKind>),
}

impl GeneratorKind {
    pub fn name(&self) -> String {
        match self {
            GeneratorKind::Sl4(_) => "sl4".into(),
            GeneratorKind::PairReflection { .. } => "pair_reflection".into(),
            GeneratorKind::SpinorPair { .. } => "spinor_pair".into(),
            GeneratorKind::TildeTau => "tilde_tau".into(),
            GeneratorKind::TildeAlpha => "tilde_alpha".into(),
            GeneratorKind::MinusOne => "minus_one".into(),
            GeneratorKind::Product(v) => v.iter().map(|k| k.name()).collect::<Vec<_>>().join("*"),
        }
    }

    fn factors(&self) -> Vec<&GeneratorKind> {
        match self {
            GeneratorKind::Product(v) => v.iter().flat_map(|k| k.factors()).collect(),
            k => vec![k],
        }
    }

    /// Generated by sl4 embeddings and reflection pairs only.
    pub fn is_spin_kind(&self) -> bool {
        self.factors().iter().all(|k| {
            matches!(k, GeneratorKind::Sl4(_) | GeneratorKind::PairReflection { .. } | GeneratorKind::SpinorPair { .. })
        })
    }

    pub fn involves_tau(&self) -> bool {
        self.factors().iter().any(|k| matches!(k, GeneratorKind::TildeTau))
    }
}

#[derive(Clone, Debug)]
pub struct StabilizerGenerator {
    pub kind: GeneratorKind,
    pub realization: AXAutomorphism,
    /// The realization's S⁺ block sends s_n to sn_sign·s_n.
    pub sn_sign: i32,
}

impl StabilizerGenerator {
    pub fn compose(&self, o: &Self) -> Self {
        let mut ks = self.kind.factors().into_iter().cloned().collect::<Vec<_>>();
        ks.extend(o.kind.factors().into_iter().cloned());
        StabilizerGenerator {
            kind: GeneratorKind::Product(ks),
            realization: self.realization.compose(&o.realization),
            sn_sign: self.sn_sign * o.sn_sign,
        }
    }

    pub fn v_action(&self) -> IntMatrix {
        self.realization.block(Block::V, Block::V).to_int().expect("integral realization")
    }

    pub fn s_plus_action(&self) -> IntMatrix {
        self.realization.block(Block::SPlus, Block::SPlus).to_int().expect("integral realization")
    }

    /// ±1 by which the realization scales the V ⊕ S⁻ pairing.
    pub fn pairing_scale(&self) -> Result<i32, StabilizerError> {
        let s = v_sminus_scale(&self.realization).ok_or(StabilizerError::NoScale)?;
        Ok(if s.is_positive() { 1 } else { -1 })
    }

    pub fn maps_sn_per_contract(&self, n: u32) -> bool {
        let s = s_n(n).s_plus_coords();
        let img = self.s_plus_action().mul_vec(&s);
        img.iter().zip(&s).all(|(a, b)| *a == int(self.sn_sign as i64) * b)
    }

    /// The monodromy operator on s_n^⊥: the S⁺ action twisted by the V ⊕ S⁻ pairing scale.
    pub fn induced(&self, perp: &SnPerp) -> Result<LatticeIsometry, StabilizerError> {
        let eps = int(self.pairing_scale()? as i64);
        let block = self.s_plus_action().scale(&eps);
        let m = restrict_to(&perp.basis, &block)?;
        Ok(LatticeIsometry::new(&perp.lattice, m)?)
    }
}

pub fn s_n(n: u32) -> SpinorElement {
    SpinorElement::even_i64(1, [0; 6], -(n as i64))
}

fn spinor_from_h1(v: &[Int]) -> SpinorElement {
    let mut s = SpinorElement::zero();
    for (i, c) in v.iter().enumerate() {
        s.coords[crate::spinor::index_of(1 << i)] = c.clone();
    }
    s
}

/// ∧*M on S = ∧*H¹.
pub fn exterior_power_matrix(m: &IntMatrix) -> IntMatrix {
    let images: Vec<SpinorElement> = (0..4).map(|i| spinor_from_h1(&m.col(i))).collect();
    let cols: Vec<Vec<Int>> = subsets()
        .iter()
        .map(|&mask| {
            (0..4)
                .filter(|i| mask & (1 << i) != 0)
                .fold(SpinorElement::one(), |acc, i| acc.wedge(&images[i]))
                .coords
        })
        .collect();
    IntMatrix::from_columns(SPIN_DIM, &cols)
}

pub fn sl4_embed(m: &IntMatrix) -> Result<StabilizerGenerator, StabilizerError> {
    let d = m.det();
    if !d.is_one() {
        return Err(StabilizerError::DetNotOne(d));
    }
    let realization = mu_tilde(&CliffordElement::new(exterior_power_matrix(m)))?;
    Ok(StabilizerGenerator { kind: GeneratorKind::Sl4(m.clone()), realization, sn_sign: 1 })
}

/// ∫A∧A for A in the e12..e34 basis.
pub fn h2_self_intersection(a: &[Int]) -> Int {
    let x = SpinorElement::even(Int::zero(), a, Int::zero());
    x.wedge(&x).integral()
}

fn is_primitive(v: &[Int]) -> bool {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x)).is_one()
}

/// t = (1, A, n)
pub fn t_vector(a: &[Int], n: u32) -> SpinorElement {
    SpinorElement::even(int(1), a, int(n as i64))
}

pub fn pair_reflection_gen(a1: &[Int], a2: &[Int], n: u32) -> Result<StabilizerGenerator, StabilizerError> {
    let expected = int(2 * n as i64 - 2);
    for a in [a1, a2] {
        if !is_primitive(a) {
            return Err(StabilizerError::NotPrimitive);
        }
        let found = h2_self_intersection(a);
        if found != expected {
            return Err(StabilizerError::WrongSelfIntersection { found, expected: expected.clone() });
        }
    }
    let realization = m_tilde_pair(&t_vector(a1, n), &t_vector(a2, n))?;
    Ok(StabilizerGenerator {
        kind: GeneratorKind::PairReflection { a1: a1.to_vec(), a2: a2.to_vec(), n },
        realization,
        sn_sign: 1,
    })
}

/// m̃_{t₁}∘m̃_{t₂} for any t₁, t₂ ∈ S⁺ of equal square ±2.
pub fn spinor_pair_gen(t1: &SpinorElement, t2: &SpinorElement) -> Result<StabilizerGenerator, StabilizerError> {
    let realization = m_tilde_pair(t1, t2)?;
    Ok(StabilizerGenerator {
        kind: GeneratorKind::SpinorPair { t1: t1.clone(), t2: t2.clone() },
        realization,
        sn_sign: 1,
    })
}

pub fn tilde_tau_gen() -> StabilizerGenerator {
    StabilizerGenerator { kind: GeneratorKind::TildeTau, realization: tilde_tau(), sn_sign: 1 }
}

pub fn tilde_alpha_gen() -> StabilizerGenerator {
    StabilizerGenerator { kind: GeneratorKind::TildeAlpha, realization: tilde_alpha(), sn_sign: 1 }
}

pub fn minus_one_gen() -> StabilizerGenerator {
    StabilizerGenerator { kind: GeneratorKind::MinusOne, realization: minus_one(), sn_sign: -1 }
}

/// s_n^⊥ ⊂ S⁺ with basis (1,0,n), H², and the BBF form −(·,·)_{S⁺}.
#[derive(Clone, Debug)]
pub struct SnPerp {
    pub n: u32,
    pub basis: IntMatrix,
    pub lattice: IntLattice,
}

pub fn sn_perp(n: u32) -> SnPerp {
    let mut cols = vec![SpinorElement::even_i64(1, [0; 6], n as i64).s_plus_coords()];
    for k in 0..6 {
        let mut h = [0i64; 6];
        h[k] = 1;
        cols.push(SpinorElement::even_i64(0, h, 0).s_plus_coords());
    }
    let basis = IntMatrix::from_columns(8, &cols);
    let gram = basis.transpose().mul(s_plus_lattice().gram()).mul(&basis).neg();
    let lattice = IntLattice::new(format!("s_{n}^perp"), gram).expect("symmetric gram");
    SnPerp { n, basis, lattice }
}

/// (s_n,s_n)_{S⁺} = −2n and (t,t)_{S⁺} = 2n − ∫A² for t = (1,A,n).
pub fn convention_self_test(n: u32) -> bool {
    let l = s_plus_lattice();
    let sq = |x: &SpinorElement| l.square(&LatticeVector::new(x.s_plus_coords())).unwrap();
    let a = crate::exact_linalg::int_vec(&[1, 0, 0, 0, 0, 2]);
    sq(&s_n(n)) == int(-2 * n as i64) && sq(&t_vector(&a, n)) == int(2 * n as i64) - h2_self_intersection(&a)
}

fn divisors(m: &Int) -> Vec<Int> {
    let m = m.abs();
    let mut out = Vec::new();
    let mut d = Int::one();
    while &d * &d <= m {
        if (&m % &d).is_zero() {
            out.push(d.clone());
            out.push(-d.clone());
            let q = &m / &d;
            if q != d {
                out.push(q.clone());
                out.push(-q);
            }
        }
        d += 1;
    }
    out
}

/// A random primitive A ∈ ∧²H¹ with ∫A²/2 = k.
pub fn random_h2_with_half_square<R: Rng>(k: i64, bound: i64, rng: &mut R) -> Vec<Int> {
    let bound = bound.max(1);
    loop {
        // a12·a34 − a13·a24 + a14·a23 = k
        let (a13, a24, a14, a23) = (
            rng.random_range(-bound..=bound),
            rng.random_range(-bound..=bound),
            rng.random_range(-bound..=bound),
            rng.random_range(-bound..=bound),
        );
        let rem = int(k + a13 * a24 - a14 * a23);
        let (a12, a34) = if rem.is_zero() {
            let x = int(rng.random_range(-bound..=bound));
            if rng.random_bool(0.5) {
                (x, Int::zero())
            } else {
                (Int::zero(), x)
            }
        } else {
            let ds = divisors(&rem);
            let d = ds[rng.random_range(0..ds.len())].clone();
            let q = &rem / &d;
            (d, q)
        };
        let a = vec![a12, int(a13), int(a14), int(a23), int(a24), a34];
        if is_primitive(&a) {
            return a;
        }
    }
}

/// A random primitive A with ∫A² = 2n − 2.
pub fn random_a<R: Rng>(n: u32, rng: &mut R) -> Vec<Int> {
    random_h2_with_half_square(n as i64 - 1, 2, rng)
}

pub fn elementary(i: usize, j: usize, c: i64) -> IntMatrix {
    let mut m = IntMatrix::identity(4);
    m.set(i, j, int(c));
    m
}

pub fn random_sl4<R: Rng>(rng: &mut R) -> IntMatrix {
    let mut m = IntMatrix::identity(4);
    for _ in 0..6 {
        let i = rng.random_range(0..4);
        let mut j = rng.random_range(0..3);
        if j >= i {
            j += 1;
        }
        let c = if rng.random_bool(0.5) { 1 } else { -1 };
        m = m.mul(&elementary(i, j, c));
    }
    m
}

/// A random element built from sl4 embeddings and reflection pairs, 1 to 3 factors.
pub fn random_spin_element<R: Rng>(n: u32, rng: &mut R) -> StabilizerGenerator {
    let factors = rng.random_range(1..=3);
    let mut g: Option<StabilizerGenerator> = None;
    for _ in 0..factors {
        let f = if rng.random_bool(0.5) {
            sl4_embed(&random_sl4(rng)).expect("det 1")
        } else {
            pair_reflection_gen(&random_a(n, rng), &random_a(n, rng), n).expect("valid A")
        };
        g = Some(match g {
            None => f,
            Some(h) => h.compose(&f),
        });
    }
    g.unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModNMatrix {
    pub n: Int,
    pub entries: IntMatrix,
}

impl ModNMatrix {
    pub fn new(m: &IntMatrix, n: &Int) -> Self {
        ModNMatrix { n: n.clone(), entries: m.reduce_mod(n) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.entries.mul(&o.entries), &self.n)
    }

    pub fn is_invertible(&self) -> bool {
        self.entries.det().gcd(&self.n).is_one()
    }
}

/// Action on H¹(X,ℤ/n) = V/H¹* mod n, after checking H¹(X,ℤ/n)* is invariant.
pub fn mod_n_rep(g: &StabilizerGenerator, n: u32) -> Result<ModNMatrix, StabilizerError> {
    let nn = int(n as i64);
    let v = g.v_action().reduce_mod(&nn);
    if !v.block(0, 4, 4, 4).is_zero() {
        return Err(StabilizerError::NotInvariant);
    }
    Ok(ModNMatrix::new(&v.block(0, 0, 4, 4), &nn))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaReport {
    pub invariant_factors: Vec<Int>,
    pub adjoint_is_minus_n: bool,
}

/// The 8×8 matrix of m_w: V → S⁻.
pub fn m_w_v_to_s_minus(w: &SpinorElement) -> IntMatrix {
    multiplication_matrix(&AXElement::from_s_plus(w)).block(8, 0, 8, 8)
}

pub fn gamma_w_cokernel(w: &SpinorElement, n: u32) -> Result<GammaReport, StabilizerError> {
    if n < 1 {
        return Err(StabilizerError::SmallN(1));
    }
    let c = w.s_plus_coords();
    if !is_primitive(&c) {
        return Err(StabilizerError::NotPrimitive);
    }
    let sq = s_plus_lattice().square(&LatticeVector::new(c))?;
    let expected = int(-2 * n as i64);
    if sq != expected {
        return Err(StabilizerError::WrongSquare(sq, expected));
    }
    let mw = m_w_v_to_s_minus(w);
    let adj = v_gram().mul(&mw.transpose()).mul(s_minus_lattice().gram());
    let prod = adj.mul(&mw);
    let snf = smith_normal_form(&mw);
    Ok(GammaReport {
        invariant_factors: snf.invariant_factors,
        adjoint_is_minus_n: prod == IntMatrix::identity(8).scale(&int(-(n as i64))),
    })
}

/// A random primitive w of square −2n: s_n moved by a random sl4 element and a reflection.
pub fn random_w<R: Rng>(n: u32, rng: &mut R) -> SpinorElement {
    let g = sl4_embed(&random_sl4(rng)).unwrap();
    let k = rng.random_range(-2i64..=2);
    let a = random_h2_with_half_square(k, 2, rng);
    // (1, A, k+1) has square 2(k+1) − 2k = 2
    let t = SpinorElement::even(int(1), &a, int(k + 1));
    let r = crate::triality::s_plus_reflection(&t).unwrap();
    let s = r.mul_vec(&g.s_plus_action().mul_vec(&s_n(n).s_plus_coords()));
    SpinorElement::from_s_plus(&s)
}

fn ints(v: &[Int]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Checks on a fixed generator set: contracts on s_n, A_X product, sl4 action on V and ∧²H¹.
pub fn stabilizer_suite<R: Rng>(n: u32, samples: usize, rng: &mut R) -> Vec<Check> {
    let mut out = vec![Check::new(
        "pairing_convention",
        "(s_n,s_n) = −2n and (t,t) = 2n − ∫A²",
        convention_self_test(n),
        format!("n = {n}"),
    )];
    let fixed = vec![
        sl4_embed(&IntMatrix::identity(4)).unwrap(),
        sl4_embed(&elementary(1, 0, 1)).unwrap(),
        pair_reflection_gen(&random_a(n, rng), &random_a(n, rng), n).unwrap(),
        tilde_alpha_gen(),
        minus_one_gen(),
        tilde_tau_gen(),
    ];
    let mut contract = true;
    let mut product = true;
    let mut tau_anti = true;
    for g in &fixed {
        contract &= g.maps_sn_per_contract(n);
        let f = g.realization.flags();
        if g.kind.involves_tau() {
            tau_anti &= g.pairing_scale() == Ok(-1);
        } else {
            product &= f.is_algebra_automorphism;
        }
    }
    let id = &fixed[0];
    out.push(Check::new("sl4_identity", "sl4_embed(id) = id", id.realization.is_identity(), ""));
    out.push(Check::new(
        "generator_contracts",
        "each generator sends s_n to ±s_n per its kind",
        contract,
        fixed.iter().map(|g| g.kind.name()).collect::<Vec<_>>().join(", "),
    ));
    out.push(Check::new(
        "generators_preserve_product",
        "g(a·b) = g(a)·g(b) on all basis pairs",
        product,
        "all generators except tilde_tau".to_string(),
    ));
    out.push(Check::new(
        "tilde_tau_scales_pairing",
        "τ̃ scales the V ⊕ S⁻ pairing by −1",
        tau_anti,
        "τ̃ is not a product-preserving map".to_string(),
    ));

    let mut sl4_ok = true;
    let h2 = crate::lattice::IntLattice::new("H2", crate::spinor::s_plus_lattice().gram().block(1, 1, 6, 6).neg())
        .unwrap();
    for _ in 0..samples {
        let m = random_sl4(rng);
        let g = sl4_embed(&m).unwrap();
        let mut expected = IntMatrix::zeros(8, 8);
        expected.set_block(0, 0, &m);
        expected.set_block(4, 4, &m.transpose().inverse_int().unwrap());
        let ext = exterior_power_matrix(&m);
        let h = crate::spinor::h2_indices();
        sl4_ok &= g.v_action() == expected && g.maps_sn_per_contract(n) && h2.is_isometry(&ext.submatrix(&h, &h));
    }
    out.push(Check::new(
        "sl4_embedding",
        "∧*M acts on V by M ⊕ (Mᵀ)⁻¹, fixes (1,0,0), (0,0,1) and is an isometry of ∧²H¹",
        sl4_ok,
        format!("{samples} random M in SL4(ℤ)"),
    ));

    let mut pair_ok = true;
    let mut same_ok = true;
    for _ in 0..samples {
        let (a1, a2) = (random_a(n, rng), random_a(n, rng));
        let g = pair_reflection_gen(&a1, &a2, n).unwrap();
        pair_ok &= g.maps_sn_per_contract(n);
        let same = pair_reflection_gen(&a1, &a1, n).unwrap();
        same_ok &= same.induced(&sn_perp(n)).map(|i| i.matrix.is_identity()).unwrap_or(false);
    }
    out.push(Check::new(
        "pair_reflections_fix_s_n",
        "m̃_{t₁}m̃_{t₂} fixes s_n for t_i = (1,A_i,n), ∫A_i² = 2n − 2",
        pair_ok,
        format!("{samples} random pairs"),
    ));
    out.push(Check::new("pair_reflection_square", "m̃_t m̃_t acts trivially on s_n^⊥", same_ok, ""));
    out
}

/// det·χ = +1 on monodromy images, reflection characters, τ̃ involution and the discriminant group.
pub fn det_chi_suite<R: Rng>(n: u32, samples: usize, rng: &mut R) -> Result<Vec<Check>, StabilizerError> {
    if n < 3 {
        return Err(StabilizerError::SmallN(3));
    }
    let perp = sn_perp(n);
    let mut out = Vec::new();

    let disc = discriminant_group(&perp.lattice)?;
    let order = disc.order();
    let two_n = int(2 * n as i64);
    let four_n_minus_2 = int(4 * n as i64 - 2);
    out.push(
        Check::new(
            "discriminant_order",
            "|(s_n^⊥)*/s_n^⊥| against 2n and 4n − 2",
            order == two_n && disc.is_cyclic(),
            format!(
                "order {order}, cyclic {}; matches 2n: {}, matches 4n-2: {}",
                disc.is_cyclic(),
                order == two_n,
                order == four_n_minus_2
            ),
        )
        .with_data(json!({
            "order": order.to_string(),
            "matches_2n": order == two_n,
            "matches_4n_minus_2": order == four_n_minus_2,
        })),
    );

    let mut elements = vec![tilde_alpha_gen(), minus_one_gen(), tilde_tau_gen()];
    for _ in 0..samples {
        elements.push(random_spin_element(n, rng));
    }
    elements.push(random_spin_element(n, rng).compose(&tilde_tau_gen()));
    let mut contract = true;
    let mut det_chi = true;
    let mut ort = true;
    let mut failures = Vec::new();
    for g in &elements {
        contract &= g.maps_sn_per_contract(n);
        let i = g.induced(&perp)?;
        let c = characters(&perp.lattice, &i)?;
        if c.det * c.chi != 1 {
            det_chi = false;
            failures.push(g.kind.name());
        }
        if g.kind.is_spin_kind() {
            ort &= c.ort == 1;
        }
    }
    out.push(Check::new(
        "stabilizer_elements_fix_s_n",
        "every generated element sends s_n to ±s_n per its kind",
        contract,
        format!("{} elements", elements.len()),
    ));
    out.push(Check::new(
        "det_chi",
        "det(g)·χ(g) = +1 on s_n^⊥",
        det_chi,
        if failures.is_empty() { format!("{} elements", elements.len()) } else { failures.join(", ") },
    ));
    out.push(Check::new(
        "spin_ort",
        "ort(g) = +1 for elements generated by sl4 and reflection pairs",
        ort,
        "".to_string(),
    ));

    let tau = tilde_tau_gen().induced(&perp)?;
    let mut expected = IntMatrix::identity(7);
    expected.set(0, 0, int(-1));
    let tau_det = det_character(&tau);
    let tau_chi = chi_character(&perp.lattice, &tau)?;
    out.push(Check::new(
        "tilde_tau_involution",
        "τ̃ fixes H² and sends (1,0,n) to −(1,0,n)",
        tau.matrix == expected && tau_det == -1 && tau_det * tau_chi == 1,
        format!("det {tau_det}, chi {tau_chi}"),
    ));

    let mut refl_ok = true;
    let mut count = 0;
    while count < samples.max(50) {
        let sign = if rng.random_bool(0.5) { 1i64 } else { -1 };
        let r = rng.random_range(-2i64..=2);
        // −2n r² + ∫H² = 2·sign
        let k = sign + n as i64 * r * r;
        let h = random_h2_with_half_square(k, 2, rng);
        let mut coords = vec![int(r)];
        coords.extend(h);
        let u = LatticeVector::new(coords);
        let uu = perp.lattice.square(&u)?;
        if uu != int(2 * sign) {
            refl_ok = false;
            break;
        }
        let ru = signed_reflection(&perp.lattice, &u)?;
        let half = (sign) as i32;
        refl_ok &= det_character(&ru) == half && chi_character(&perp.lattice, &ru)? == -half;
        count += 1;
    }
    out.push(Check::new(
        "reflection_characters",
        "det(r_u) = (u,u)/2 and χ(r_u) = −(u,u)/2",
        refl_ok,
        format!("{count} vectors u with (u,u) = ±2"),
    ));
    Ok(out)
}

pub fn modn_suite<R: Rng>(n: u32, samples: usize, rng: &mut R) -> Vec<Check> {
    let nn = int(n as i64);
    let mut hom = true;
    let mut invariant = true;
    for _ in 0..samples {
        let g = random_spin_element(n, rng);
        let h = random_spin_element(n, rng);
        match (mod_n_rep(&g, n), mod_n_rep(&h, n), mod_n_rep(&g.compose(&h), n)) {
            (Ok(a), Ok(b), Ok(c)) => hom &= a.mul(&b) == c && c.is_invertible(),
            _ => invariant = false,
        }
    }
    let mut literal = true;
    for _ in 0..samples.min(20) {
        let m = random_sl4(rng);
        literal &= mod_n_rep(&sl4_embed(&m).unwrap(), n).map(|r| r == ModNMatrix::new(&m, &nn)).unwrap_or(false);
    }
    let alpha = mod_n_rep(&tilde_alpha_gen(), n)
        .map(|r| r == ModNMatrix::new(&IntMatrix::identity(4).neg(), &nn))
        .unwrap_or(false);
    let id = mod_n_rep(&sl4_embed(&IntMatrix::identity(4)).unwrap(), n)
        .map(|r| r.entries == IntMatrix::identity(4).reduce_mod(&nn))
        .unwrap_or(false);
    vec![
        Check::new("modn_invariance", "H¹(X,ℤ/n)* is invariant", invariant, format!("{samples} pairs, n = {n}")),
        Check::new("modn_homomorphism", "rep(g·g′) = rep(g)·rep(g′) mod n", hom, format!("{samples} pairs")),
        Check::new("modn_sl4_literal", "sl4_embed(M) ↦ M mod n", literal, ""),
        Check::new("modn_tilde_alpha", "α̃ ↦ −id mod n", alpha, ""),
        Check::new("modn_identity", "id ↦ id", id, ""),
    ]
}

pub fn gamma_suite<R: Rng>(ns: &[u32], rng: &mut R) -> Vec<Check> {
    let mut out = Vec::new();
    for &n in ns {
        let expected: Vec<Int> = (0..8).map(|i| if i < 4 { Int::one() } else { int(n as i64) }).collect();
        let mut ok = true;
        let mut detail = String::new();
        for w in [s_n(n), random_w(n, rng)] {
            match gamma_w_cokernel(&w, n) {
                Ok(r) => {
                    ok &= r.invariant_factors == expected && r.adjoint_is_minus_n;
                    detail = format!("factors {:?}", ints(&r.invariant_factors));
                }
                Err(e) => {
                    ok = false;
                    detail = e.to_string();
                }
            }
        }
        out.push(
            Check::new(format!("gamma_w_n{n}"), "coker(m_w: V → S⁻) ≅ (ℤ/n)⁴ and m_w†m_w = −n", ok, detail)
                .with_data(json!({ "m_w": matrix_json(&m_w_v_to_s_minus(&s_n(n))) })),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::suite_rng;
    use proptest::prelude::*;

    #[test]
    fn convention() {
        for n in 1..8 {
            assert!(convention_self_test(n));
        }
    }

    #[test]
    fn sl4_identity_and_elementary() {
        assert!(sl4_embed(&IntMatrix::identity(4)).unwrap().realization.is_identity());
        let g = sl4_embed(&elementary(1, 0, 1)).unwrap();
        for n in 3..=5 {
            assert!(g.maps_sn_per_contract(n));
        }
        assert!(g.realization.flags().is_algebra_automorphism);
        assert!(matches!(sl4_embed(&IntMatrix::identity(4).scale(&int(2))), Err(StabilizerError::DetNotOne(_))));
    }

    #[test]
    fn t_vector_square() {
        let a = crate::exact_linalg::int_vec(&[1, 0, 0, 0, 0, 2]);
        assert_eq!(h2_self_intersection(&a), int(4));
        let t = t_vector(&a, 3);
        assert_eq!(s_plus_lattice().square(&LatticeVector::new(t.s_plus_coords())).unwrap(), int(2));
        let g = pair_reflection_gen(&a, &a, 3).unwrap();
        assert!(g.induced(&sn_perp(3)).unwrap().matrix.is_identity());
        assert!(pair_reflection_gen(&a, &a, 4).is_err());
    }

    #[test]
    fn sn_perp_shape() {
        let p = sn_perp(4);
        assert_eq!(p.lattice.det(), int(8));
        assert_eq!(discriminant_group(&p.lattice).unwrap().order(), int(8));
    }

    #[test]
    fn gamma_examples() {
        let r = gamma_w_cokernel(&s_n(5), 5).unwrap();
        assert_eq!(r.invariant_factors, crate::exact_linalg::int_vec(&[1, 1, 1, 1, 5, 5, 5, 5]));
        assert!(r.adjoint_is_minus_n);
        let r1 = gamma_w_cokernel(&s_n(1), 1).unwrap();
        assert!(r1.invariant_factors.iter().all(|f| f.is_one()));
        assert!(gamma_w_cokernel(&s_n(2), 3).is_err());
    }

    #[test]
    fn tau_involution_on_perp() {
        let i = tilde_tau_gen().induced(&sn_perp(3)).unwrap();
        let c = characters(&sn_perp(3).lattice, &i).unwrap();
        assert_eq!((c.det, c.det * c.chi), (-1, 1));
    }

    #[test]
    fn suites_pass() {
        let mut rng = suite_rng(0, "stabilizer");
        for n in 3..=5 {
            for c in stabilizer_suite(n, 5, &mut rng) {
                assert!(c.passed(), "{}: {}", c.name, c.detail);
            }
            for c in det_chi_suite(n, 8, &mut rng).unwrap() {
                assert!(c.passed(), "{}: {}", c.name, c.detail);
            }
            for c in modn_suite(n, 8, &mut rng) {
                assert!(c.passed(), "{}: {}", c.name, c.detail);
            }
        }
        for c in gamma_suite(&[2, 3, 4], &mut rng) {
            assert!(c.passed(), "{}: {}", c.name, c.detail);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]

        #[test]
        fn random_a_has_right_square(seed in any::<u64>(), n in 2u32..9) {
            let mut rng = suite_rng(seed, "a");
            let a = random_a(n, &mut rng);
            prop_assert_eq!(h2_self_intersection(&a), int(2 * n as i64 - 2));
            prop_assert!(is_primitive(&a));
        }
    }
}
