//! Polarizations of Weil type on V from pairs w, h ∈ S⁺: Θ′_h = m_w∘m_h, complex structures
//! J_ℓ = m_{u₁}∘m_{u₂}, Kähler metrics and the Hermitian form over ℚ[√−d].

use num_traits::{One, Signed, Zero};
use rand::{Rng, RngExt};
use serde_json::json;
use thiserror::Error;

use crate::exact_linalg::{int, is_rational_square, rat_from_int, Int, IntMatrix, Rat, RatMatrix, RowSpace};
use crate::lattice::{int_json, rat_json, IntLattice, LatticeVector};
use crate::report::Check;
use crate::spinor::{clifford_embed, s_minus_lattice, s_plus_lattice, v_gram, v_vector, SpinorElement};
use crate::stabilizer::{exterior_power_matrix, random_h2_with_half_square, random_sl4, s_n};
use crate::triality::{m_tilde_mixed_pair, m_y, s_plus_reflection, v_sminus_scale, AXElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeilError {
    #[error("(w,h) = {0}, expected 0")]
    NotOrthogonal(Int),
    #[error("square {0} is not negative and even")]
    BadSquare(Int),
    #[error("plane basis violates (u,u) = −2, (u₁,u₂) = 0")]
    BadPlane,
    #[error("degenerate input")]
    Degenerate,
    #[error("g is indefinite")]
    Indefinite,
    #[error("no U ⊕ U found in {{w,h}}^⊥ within the search bound")]
    SearchExhausted,
    #[error("the planes L_(z,y) are not two dimensional")]
    BadIsotropicPlanes,
}

fn sp(x: &SpinorElement) -> LatticeVector {
    LatticeVector::new(x.s_plus_coords())
}

fn pair(x: &SpinorElement, y: &SpinorElement) -> Int {
    s_plus_lattice().pairing(&sp(x), &sp(y)).unwrap()
}

fn rat_pair_s_plus(x: &[Rat], y: &[Rat]) -> Rat {
    s_plus_lattice().gram().to_rat().bilinear(x, y)
}

/// Clifford multiplication by a rational y ∈ S⁺ on V ⊕ S⁻.
pub fn m_rat(y: &[Rat]) -> RatMatrix {
    let mut out = RatMatrix::zeros(16, 16);
    for (i, c) in y.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut e = vec![Int::zero(); 8];
        e[i] = Int::one();
        out = out.add(&m_y(&SpinorElement::from_s_plus(&e)).to_rat().scale(c));
    }
    out
}

fn v_block(m: &RatMatrix) -> RatMatrix {
    m.block(0, 0, 8, 8)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilStructure {
    pub w: SpinorElement,
    pub h: SpinorElement,
    pub n: Int,
    pub k: Int,
    pub d: Int,
    pub theta_prime: IntMatrix,
    /// Θ_h(x,y) = (Θ′_h x, y)_V
    pub theta_form: IntMatrix,
}

pub fn weil_structure(w: &SpinorElement, h: &SpinorElement) -> Result<WeilStructure, WeilError> {
    let wh = pair(w, h);
    if !wh.is_zero() {
        return Err(WeilError::NotOrthogonal(wh));
    }
    let (ww, hh) = (pair(w, w), pair(h, h));
    for (q, allow_zero) in [(&ww, false), (&hh, true)] {
        let ok = (q.is_negative() || (allow_zero && q.is_zero())) && (q % int(2)).is_zero();
        if !ok {
            return Err(WeilError::BadSquare(q.clone()));
        }
    }
    let (n, k) = (-ww / int(2), -hh / int(2));
    let theta_prime = m_y(w).mul(&m_y(h)).block(0, 0, 8, 8);
    let theta_form = theta_prime.transpose().mul(&v_gram());
    Ok(WeilStructure { w: w.clone(), h: h.clone(), d: &n * &k, n, k, theta_prime, theta_form })
}

impl WeilStructure {
    pub fn squares_to_minus_d(&self) -> bool {
        self.theta_prime.mul(&self.theta_prime) == IntMatrix::identity(8).scale(&-self.d.clone())
    }

    pub fn anti_self_dual(&self) -> bool {
        let g = v_gram();
        g.mul(&self.theta_prime).add(&self.theta_prime.transpose().mul(&g)).is_zero()
    }

    pub fn form_alternating(&self) -> bool {
        self.theta_form.add(&self.theta_form.transpose()).is_zero()
    }

    /// a + b·Θ′_h
    pub fn k_action(&self, a: &Int, b: &Int) -> IntMatrix {
        IntMatrix::identity(8).scale(a).add(&self.theta_prime.scale(b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructureJ {
    pub u1: Vec<Rat>,
    pub u2: Vec<Rat>,
    pub j: RatMatrix,
}

pub fn j_ell(u1: &[Rat], u2: &[Rat]) -> Result<ComplexStructureJ, WeilError> {
    let m2 = -Rat::from_integer(int(2));
    if rat_pair_s_plus(u1, u1) != m2 || rat_pair_s_plus(u2, u2) != m2 || !rat_pair_s_plus(u1, u2).is_zero() {
        return Err(WeilError::BadPlane);
    }
    let j = v_block(&m_rat(u1).mul(&m_rat(u2)));
    Ok(ComplexStructureJ { u1: u1.to_vec(), u2: u2.to_vec(), j })
}

pub fn j_ell_int(u1: &SpinorElement, u2: &SpinorElement) -> Result<ComplexStructureJ, WeilError> {
    let r = |x: &SpinorElement| x.s_plus_coords().iter().map(rat_from_int).collect::<Vec<_>>();
    j_ell(&r(u1), &r(u2))
}

fn leading_minors(m: &RatMatrix) -> Vec<Rat> {
    (1..=m.rows()).map(|k| m.block(0, 0, k, k).det()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerMetric {
    pub g: RatMatrix,
    /// +1 positive definite, −1 negative definite.
    pub sign: i32,
    pub minors: Vec<Rat>,
}

/// Sylvester test on a symmetric matrix: Some(±1) when definite.
pub fn definiteness(g: &RatMatrix) -> Option<(i32, Vec<Rat>)> {
    let minors = leading_minors(g);
    if minors.iter().all(|m| m.is_positive()) {
        return Some((1, minors));
    }
    let alternating = minors.iter().enumerate().all(|(i, m)| if i % 2 == 0 { m.is_negative() } else { m.is_positive() });
    alternating.then_some((-1, minors))
}

/// g(x,y) = Θ_h(J x, y)
pub fn kahler_metric(ws: &WeilStructure, j: &ComplexStructureJ) -> Result<KahlerMetric, WeilError> {
    let tf = ws.theta_form.to_rat();
    let g = j.j.transpose().mul(&tf);
    if g != g.transpose() {
        return Err(WeilError::Indefinite);
    }
    let (sign, minors) = definiteness(&g).ok_or(WeilError::Indefinite)?;
    Ok(KahlerMetric { g, sign, minors })
}

/// γ = m_{f₁}m_{f₂}m_{f₃}m_{f₄} with fᵢ = vᵢ − θᵢ ∈ V acting on S⁻: (γ vᵢ, vᵢ) = 1 and (γ·,·) positive definite.
pub fn clifford_definite_example() -> (Vec<Int>, bool) {
    let mut gamma = IntMatrix::identity(16);
    for i in 0..4 {
        let mut w = [0i64; 4];
        let mut t = [0i64; 4];
        w[i] = 1;
        t[i] = -1;
        gamma = gamma.mul(&clifford_embed(&v_vector(w, t)).matrix);
    }
    let odd = crate::spinor::odd_indices();
    let g = gamma.submatrix(&odd, &odd);
    let form = g.transpose().mul(s_minus_lattice().gram());
    let diag: Vec<Int> = (0..4).map(|i| form.get(i, i).clone()).collect();
    let definite = form == form.transpose() && definiteness(&form.to_rat()).map(|d| d.0) == Some(1);
    (diag, definite)
}

/// J_ℓ J_ℓ′ = −J_ℓ′ J_ℓ for ℓ = ⟨h′, f⟩, ℓ′ = ⟨f, h⟩, and Θ_h(J_ℓ·,·) = Θ_{h′}(J_ℓ′·,·).
pub fn anticommute_check(
    w: &SpinorElement,
    h: &SpinorElement,
    h_prime: &SpinorElement,
    f: &SpinorElement,
) -> Result<(bool, bool), WeilError> {
    let vs = [h, h_prime, f];
    for (i, x) in vs.iter().enumerate() {
        if pair(x, x) != int(-2) || !pair(x, w).is_zero() {
            return Err(WeilError::BadPlane);
        }
        for y in &vs[i + 1..] {
            if !pair(x, y).is_zero() {
                return Err(WeilError::BadPlane);
            }
        }
    }
    let jl = j_ell_int(h_prime, f)?;
    let jl2 = j_ell_int(f, h)?;
    let anti = jl.j.mul(&jl2.j).add(&jl2.j.mul(&jl.j)).is_zero();
    let g = kahler_metric(&weil_structure(w, h)?, &jl)?;
    let g2 = kahler_metric(&weil_structure(w, h_prime)?, &jl2)?;
    Ok((anti, g.g == g2.g))
}

/// Θ_h(λx, λy) = Nm(λ)·Θ_h(x,y) for λ = a + b√−d.
pub fn weil_multiplication_check(ws: &WeilStructure, a: &Int, b: &Int) -> bool {
    let l = ws.k_action(a, b);
    let norm = a * a + b * b * &ws.d;
    l.transpose().mul(&ws.theta_form).mul(&l) == ws.theta_form.scale(&norm)
}

/// H(x,y) = d(x,y)_V + √−d(Θ′_h x, y)_V as real and imaginary Gram matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianFormK {
    pub d: Int,
    pub real: IntMatrix,
    pub imag: IntMatrix,
}

/// An element re + im·√−d of K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KElement {
    pub re: Rat,
    pub im: Rat,
}

impl KElement {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl HermitianFormK {
    pub fn new(ws: &WeilStructure) -> Self {
        HermitianFormK {
            d: ws.d.clone(),
            real: v_gram().scale(&ws.d),
            imag: ws.theta_form.clone(),
        }
    }

    pub fn eval(&self, x: &[Rat], y: &[Rat]) -> KElement {
        KElement { re: self.real.to_rat().bilinear(x, y), im: self.imag.to_rat().bilinear(x, y) }
    }

    pub fn is_hermitian(&self) -> bool {
        self.real == self.real.transpose() && self.imag == self.imag.transpose().neg()
    }

    /// H(Θ′x, y) = −√−d·H(x,y): conjugate-linear in the first slot.
    pub fn is_sesquilinear(&self, ws: &WeilStructure) -> bool {
        let t = &ws.theta_prime;
        let re = t.transpose().mul(&self.real);
        let im = t.transpose().mul(&self.imag);
        re == self.imag.scale(&self.d) && im == self.real.neg()
    }

    /// det of the 8×8 realization d(·,·) + (Θ′·,·) is nonzero.
    pub fn is_nondegenerate(&self) -> bool {
        !self.real.add(&self.imag).det().is_zero()
    }
}

/// L_z = ker(m_z: V → S⁻)
pub fn isotropic_subspace(z: &SpinorElement) -> Vec<Vec<Rat>> {
    let m = crate::triality::multiplication_matrix(&AXElement::from_s_plus(z)).block(8, 0, 8, 8);
    m.to_rat().kernel()
}

fn intersect(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    // x = Σ αᵢaᵢ = Σ βⱼbⱼ
    let mut cols: Vec<Vec<Rat>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|c| -c).collect()));
    let m = RatMatrix::from_columns(8, &cols);
    m.kernel()
        .into_iter()
        .map(|coef| {
            let mut x = vec![Rat::zero(); 8];
            for (c, v) in coef.iter().zip(a) {
                for (xi, vi) in x.iter_mut().zip(v) {
                    *xi += c * vi;
                }
            }
            x
        })
        .collect()
}

fn v_pair(x: &[Rat], y: &[Rat]) -> Rat {
    v_gram().to_rat().bilinear(x, y)
}

#[derive(Clone, Debug)]
pub struct DiscriminantWitness {
    pub e: [SpinorElement; 2],
    pub f: [SpinorElement; 2],
    pub basis: Vec<Vec<Rat>>,
    pub h_orthogonal: bool,
    pub diagonal: Vec<KElement>,
    pub det_psi: Rat,
    pub expected: Rat,
    pub is_square: bool,
    pub eta_checks: bool,
}

/// Search for e₁,f₁,e₂,f₂ ∈ {w,h}^⊥ with squares 2,−2,2,−2, pairwise orthogonal.
pub fn find_uu<R: Rng>(w: &SpinorElement, h: &SpinorElement, attempts: usize, rng: &mut R) -> Option<[SpinorElement; 4]> {
    let l = s_plus_lattice();
    let targets = [2i64, -2, 2, -2];
    'restart: for _ in 0..attempts {
        let mut chosen: Vec<SpinorElement> = Vec::new();
        for &t in &targets {
            let mut fixed: Vec<LatticeVector> = vec![sp(w), sp(h)];
            fixed.extend(chosen.iter().map(sp));
            let basis = l.orthogonal_complement(&fixed);
            if basis.is_empty() {
                continue 'restart;
            }
            let b = IntMatrix::from_columns(8, &basis.iter().map(|v| v.coords.clone()).collect::<Vec<_>>());
            let sub = IntLattice::new("c", b.transpose().mul(l.gram()).mul(&b)).unwrap();
            let mut found = None;
            for _ in 0..400 {
                let c: Vec<Int> = (0..basis.len()).map(|_| int(rng.random_range(-2i64..=2))).collect();
                let x = LatticeVector::new(c);
                if sub.square(&x).unwrap() == int(t) {
                    found = Some(SpinorElement::from_s_plus(&b.mul_vec(&x.coords)));
                    break;
                }
            }
            match found {
                Some(x) => chosen.push(x),
                None => continue 'restart,
            }
        }
        return Some([chosen[0].clone(), chosen[1].clone(), chosen[2].clone(), chosen[3].clone()]);
    }
    None
}

/// The H-orthogonal K-basis x₁..x₄ built from U₁ ⊕ U₂ ⊂ {w,h}^⊥ and the certificate that det Ψ is a square.
pub fn hermitian_and_discriminant<R: Rng>(ws: &WeilStructure, rng: &mut R) -> Result<DiscriminantWitness, WeilError> {
    if ws.d.is_zero() {
        return Err(WeilError::Degenerate);
    }
    let [e1, f1, e2, f2] = find_uu(&ws.w, &ws.h, 200, rng).ok_or(WeilError::SearchExhausted)?;
    let z = [e1.add(&f1.scale(&int(-1))), e1.add(&f1)];
    let y = [e2.add(&f2.scale(&int(-1))), e2.add(&f2)];
    let lz: Vec<Vec<Vec<Rat>>> = z.iter().map(isotropic_subspace).collect();
    let ly: Vec<Vec<Vec<Rat>>> = y.iter().map(isotropic_subspace).collect();
    let plane = |i: usize, j: usize| intersect(&lz[i], &ly[j]);
    let (l11, l22, l12, l21) = (plane(0, 0), plane(1, 1), plane(0, 1), plane(1, 0));
    if [&l11, &l22, &l12, &l21].iter().any(|p| p.len() != 2) {
        return Err(WeilError::BadIsotropicPlanes);
    }
    let tp = ws.theta_prime.to_rat();
    let pick = |p: &[Vec<Rat>], q: &[Vec<Rat>]| -> Option<(Vec<Rat>, Vec<Rat>)> {
        let a = p[0].clone();
        let ta = tp.mul_vec(&a);
        // b ∈ q with (a, Θ′b) = −(Θ′a, b) = 0
        let (c0, c1) = (v_pair(&ta, &q[0]), v_pair(&ta, &q[1]));
        let b: Vec<Rat> = if c1.is_zero() {
            q[1].clone()
        } else {
            q[0].iter().zip(&q[1]).map(|(x, y)| x * &c1 - y * &c0).collect()
        };
        (!v_pair(&a, &b).is_zero()).then_some((a, b))
    };
    let (a, b) = pick(&l11, &l22).ok_or(WeilError::BadIsotropicPlanes)?;
    let (a2, b2) = pick(&l12, &l21).ok_or(WeilError::BadIsotropicPlanes)?;
    let sum = |x: &[Rat], y: &[Rat], s: i64| -> Vec<Rat> {
        x.iter().zip(y).map(|(p, q)| p + q * Rat::from_integer(int(s))).collect()
    };
    let basis = vec![sum(&a, &b, 1), sum(&a, &b, -1), sum(&a2, &b2, 1), sum(&a2, &b2, -1)];
    let hf = HermitianFormK::new(ws);
    let mut h_orth = true;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                h_orth &= hf.eval(&basis[i], &basis[j]).is_zero();
            }
        }
    }
    // K-independence: x₁..x₄ and Θ′x₁..Θ′x₄ span V_ℚ
    let mut rs = RowSpace::new(8);
    for x in &basis {
        rs.insert(x);
        rs.insert(&tp.mul_vec(x));
    }
    h_orth &= rs.rank() == 8;
    let diagonal: Vec<KElement> = basis.iter().map(|x| hf.eval(x, x)).collect();
    let det_psi = diagonal.iter().fold(Rat::one(), |acc, k| acc * &k.re);
    let dd = rat_from_int(&ws.d);
    let x11 = v_pair(&basis[0], &basis[0]);
    let x33 = v_pair(&basis[2], &basis[2]);
    let expected = dd.clone() * &dd * &dd * &dd * &x11 * &x11 * &x33 * &x33;
    let diag_real = diagonal.iter().all(|k| k.im.is_zero());
    let is_square = diag_real && is_rational_square(&det_psi).map(|r| r.0).unwrap_or(false) && !det_psi.is_zero();

    let mut eta_ok = true;
    for (e, f) in [(&e1, &f1), (&e2, &f2)] {
        let eta = m_tilde_mixed_pair(e, f).map_err(|_| WeilError::BadPlane)?;
        let ev = eta.block(crate::triality::Block::V, crate::triality::Block::V);
        eta_ok &= eta.compose(&eta).is_identity();
        eta_ok &= v_sminus_scale(&eta) == Some(-Rat::one());
        eta_ok &= ev.mul(&tp) == tp.mul(&ev);
    }
    Ok(DiscriminantWitness {
        e: [e1, e2],
        f: [f1, f2],
        basis,
        h_orthogonal: h_orth,
        diagonal,
        det_psi,
        expected,
        is_square,
        eta_checks: eta_ok,
    })
}

/// Each V-action commutes with Θ′_h and preserves (·,·)_V, hence H.
pub fn spin_wh_commutant_check(ws: &WeilStructure, v_actions: &[IntMatrix]) -> bool {
    let hf = HermitianFormK::new(ws);
    let g = v_gram();
    v_actions.iter().all(|m| {
        m.mul(&ws.theta_prime) == ws.theta_prime.mul(m)
            && m.transpose().mul(&hf.real).mul(m) == hf.real
            && m.transpose().mul(&hf.imag).mul(m) == hf.imag
            && m.transpose().mul(&g).mul(m) == g
    })
}

/// A random integral isometry of S⁺: reflections in vectors of square ±2 and an sl4 element.
pub fn random_s_plus_isometry<R: Rng>(rng: &mut R) -> IntMatrix {
    let m = random_sl4(rng);
    let e = exterior_power_matrix(&m);
    let even = crate::spinor::even_indices();
    let mut g = e.submatrix(&even, &even);
    for _ in 0..2 {
        let k = rng.random_range(-2i64..=2);
        let a = random_h2_with_half_square(k, 2, rng);
        let sign = if rng.random_bool(0.5) { 1 } else { -1 };
        // (1, A, k + sign) has square 2(k + sign) − 2k = 2·sign
        let t = SpinorElement::even(int(1), &a, int(k + sign));
        g = s_plus_reflection(&t).unwrap().mul(&g);
    }
    g
}

fn apply(g: &IntMatrix, x: &SpinorElement) -> SpinorElement {
    SpinorElement::from_s_plus(&g.mul_vec(&x.s_plus_coords()))
}

/// w = (1,0,−n), h = (0, e12 + k·e34, 0), u₁ = (0, e13 − e24, 0), u₂ = (0, e14 + e23, 0).
pub fn standard_configuration(n: u32, k: i64) -> [SpinorElement; 4] {
    [
        s_n(n),
        SpinorElement::even_i64(0, [1, 0, 0, 0, 0, k], 0),
        SpinorElement::even_i64(0, [0, 1, 0, 0, -1, 0], 0),
        SpinorElement::even_i64(0, [0, 0, 1, 1, 0, 0], 0),
    ]
}

pub fn random_configuration<R: Rng>(n: u32, k: i64, rng: &mut R) -> [SpinorElement; 4] {
    let g = random_s_plus_isometry(rng);
    standard_configuration(n, k).map(|x| apply(&g, &x))
}

/// A random pair w = (1,0,−n), h = (0,A,0) with ∫A² = 2k.
pub fn random_wh<R: Rng>(n: u32, k: i64, rng: &mut R) -> (SpinorElement, SpinorElement) {
    let a = random_h2_with_half_square(k, 2, rng);
    (s_n(n), SpinorElement::even(Int::zero(), &a, Int::zero()))
}

pub fn weil_suite<R: Rng>(n: u32, h_coeffs: Option<&[Int]>, samples: usize, rng: &mut R) -> Result<Vec<Check>, WeilError> {
    let mut out = Vec::new();
    let w = s_n(n);
    let h = match h_coeffs {
        Some(c) if c.len() == 8 => SpinorElement::from_s_plus(c),
        Some(c) if c.len() == 6 => SpinorElement::even(Int::zero(), c, Int::zero()),
        Some(_) => return Err(WeilError::Degenerate),
        None => SpinorElement::even_i64(0, [1, 0, 0, 0, 0, 1], 0),
    };
    let ws = weil_structure(&w, &h)?;
    out.push(
        Check::new(
            "theta_prime_square",
            "(Θ′_h)² = −d·id with d = nk",
            ws.squares_to_minus_d() && ws.anti_self_dual() && ws.form_alternating(),
            format!("given h, d = {}", ws.d),
        )
        .with_data(json!({ "d": int_json(&ws.d) })),
    );

    let mut sq = true;
    for _ in 0..samples.max(50) {
        let nn = rng.random_range(1u32..=6);
        let k = rng.random_range(1i64..=6);
        let [w, h, _, _] = random_configuration(nn, k, rng);
        let s = weil_structure(&w, &h)?;
        sq &= s.squares_to_minus_d() && s.anti_self_dual() && s.form_alternating() && s.d == int(nn as i64 * k);
    }
    out.push(Check::new(
        "theta_prime_square_sampled",
        "(Θ′_h)² = −d·id, Θ′ anti-self-dual, Θ_h alternating",
        sq,
        format!("{} random (w,h)", samples.max(50)),
    ));

    let mut nm = true;
    for _ in 0..20 {
        let a = int(rng.random_range(-5i64..=5));
        let b = int(rng.random_range(-5i64..=5));
        nm &= weil_multiplication_check(&ws, &a, &b);
    }
    let scale7 = {
        let s3 = weil_structure(&s_n(3), &SpinorElement::even_i64(0, [1, 0, 0, 0, 0, 1], 0))?;
        weil_multiplication_check(&s3, &int(2), &int(1)) && s3.d == int(3)
    };
    out.push(Check::new("weil_multiplication", "λ*Θ_h = Nm(λ)·Θ_h", nm && scale7, "20 random λ = a + b√−d"));

    let mut kahler = true;
    let mut signs = Vec::new();
    for _ in 0..10 {
        let nn = rng.random_range(1u32..=6);
        let k = rng.random_range(1i64..=6);
        let [w, h, u1, u2] = random_configuration(nn, k, rng);
        let s = weil_structure(&w, &h)?;
        let j = j_ell_int(&u1, &u2)?;
        let jj = j.j.mul(&j.j) == RatMatrix::identity(8).neg();
        let neg = weil_structure(&w, &h.scale(&int(-1)))?;
        match (kahler_metric(&s, &j), kahler_metric(&neg, &j)) {
            (Ok(g), Ok(g2)) => {
                kahler &= jj && g2.sign == -g.sign && j.j.mul(&s.theta_prime.to_rat()) == s.theta_prime.to_rat().mul(&j.j);
                signs.push(g.sign);
            }
            _ => kahler = false,
        }
    }
    let (diag, definite) = clifford_definite_example();
    out.push(Check::new(
        "kahler_definite",
        "g(x,y) = Θ_h(J_ℓx, y) is definite, J_ℓ² = −id",
        kahler && definite && diag.iter().all(|x| x.is_one()),
        format!("signs {signs:?}"),
    ));

    let mut anti = true;
    let mut same = true;
    for _ in 0..10 {
        let g = random_s_plus_isometry(rng);
        let nn = rng.random_range(1u32..=6);
        let w = apply(&g, &s_n(nn));
        let [h, h2, f] = [[1, 0, 0, 0, 0, 1], [0, 1, 0, 0, -1, 0], [0, 0, 1, 1, 0, 0]]
            .map(|c| apply(&g, &SpinorElement::even_i64(0, c, 0)));
        let (a, s) = anticommute_check(&w, &h, &h2, &f)?;
        anti &= a;
        same &= s;
    }
    out.push(Check::new("j_anticommute", "J_ℓJ_ℓ′ = −J_ℓ′J_ℓ when (h,h′) = 0", anti, "10 random frames"));
    out.push(Check::new("metrics_coincide", "Θ_h(J_ℓ·,·) = Θ_{h′}(J_ℓ′·,·)", same, "10 random frames"));

    let hf = HermitianFormK::new(&ws);
    out.push(Check::new(
        "hermitian_form",
        "H is Hermitian, K-sesquilinear and nondegenerate",
        hf.is_hermitian() && hf.is_sesquilinear(&ws) && hf.is_nondegenerate(),
        "",
    ));

    let gens = crate::cayley::stabilizer_generators(&w, Some(&h), 8, rng).map_err(|_| WeilError::SearchExhausted)?;
    let acts: Vec<IntMatrix> = gens.iter().map(|g| g.v_action()).collect();
    let commutant = spin_wh_commutant_check(&ws, &acts) && spin_wh_commutant_check(&ws, &[IntMatrix::identity(8)]);
    let mover = {
        let t = crate::cayley::random_square_two_vectors(std::slice::from_ref(&w), -1, 8, rng).map_err(|_| WeilError::SearchExhausted)?;
        let t: Vec<SpinorElement> = t.into_iter().filter(|t| !pair(t, &h).is_zero()).collect();
        if t.is_empty() {
            return Err(WeilError::SearchExhausted);
        }
        let extra = crate::cayley::random_square_two_vectors(&[w.clone(), h.clone()], -1, 1, rng)
            .map_err(|_| WeilError::SearchExhausted)?;
        let g = crate::stabilizer::spinor_pair_gen(&t[0], &extra[0]).map_err(|_| WeilError::BadPlane)?;
        let moves_h = g.s_plus_action().mul_vec(&h.s_plus_coords()) != h.s_plus_coords();
        moves_h && !spin_wh_commutant_check(&ws, &[g.v_action()])
    };
    out.push(Check::new(
        "spin_wh_preserves_h",
        "Spin(S⁺)_{w,h} commutes with Θ′_h and preserves H",
        commutant && mover,
        format!("{} generators; an element moving h is rejected", gens.len()),
    ));

    let mut equivariant = true;
    let wgens = crate::cayley::stabilizer_generators(&w, None, 6, rng).map_err(|_| WeilError::SearchExhausted)?;
    for g in &wgens {
        let rho = g.v_action();
        let gh = apply(&g.s_plus_action(), &h);
        let s2 = weil_structure(&w, &gh)?;
        equivariant &= rho.transpose().mul(&s2.theta_form).mul(&rho) == ws.theta_form;
    }
    out.push(Check::new(
        "theta_equivariant",
        "Θ_{g h}(g x, g y) = Θ_h(x, y) for g fixing w",
        equivariant,
        format!("{} elements", wgens.len()),
    ));
    Ok(out)
}

pub fn discriminant_suite<R: Rng>(n: u32, samples: usize, rng: &mut R) -> Vec<Check> {
    let mut out = Vec::new();
    let mut found = 0;
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    for i in 0..samples {
        let nn = if i == 0 { n } else { rng.random_range(1u32..=6) };
        let k = rng.random_range(1i64..=6);
        let (w, h) = random_wh(nn, k, rng);
        let ws = match weil_structure(&w, &h) {
            Ok(ws) => ws,
            Err(e) => {
                failures.push(e.to_string());
                continue;
            }
        };
        match hermitian_and_discriminant(&ws, rng) {
            Ok(wit) => {
                let ok = wit.h_orthogonal && wit.is_square && wit.det_psi == wit.expected && wit.eta_checks;
                if ok {
                    found += 1;
                } else {
                    failures.push(format!("n = {nn}, k = {k}: certificate failed"));
                }
                witnesses.push(json!({
                    "n": nn,
                    "k": k,
                    "h": ws.h.to_json(),
                    "e": wit.e.iter().map(SpinorElement::to_json).collect::<Vec<_>>(),
                    "f": wit.f.iter().map(SpinorElement::to_json).collect::<Vec<_>>(),
                    "basis": wit.basis.iter().map(|x| x.iter().map(rat_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "det_psi": rat_json(&wit.det_psi),
                }));
            }
            Err(e) => failures.push(format!("n = {nn}, k = {k}: {e}")),
        }
    }
    out.push(
        Check::new(
            "trivial_discriminant",
            "det Ψ = d⁴(x₁,x₁)²(x₃,x₃)² ∈ (ℚ*)² for an H-orthogonal K-basis",
            found == samples,
            if failures.is_empty() { format!("{found} of {samples} pairs (w,h)") } else { failures.join("; ") },
        )
        .with_data(json!({ "witnesses": witnesses })),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::suite_rng;
    use crate::exact_linalg::to_rat_vec;

    #[test]
    fn theta_prime_example() {
        let h = SpinorElement::even_i64(0, [1, 0, 0, 0, 0, 1], 0);
        let ws = weil_structure(&s_n(3), &h).unwrap();
        assert_eq!(ws.d, int(3));
        assert!(ws.squares_to_minus_d());
        assert!(ws.anti_self_dual());
        assert!(ws.form_alternating());
        let zero = weil_structure(&s_n(3), &SpinorElement::zero()).unwrap();
        assert!(zero.theta_prime.is_zero());
        assert!(weil_structure(&s_n(3), &SpinorElement::even_i64(1, [0; 6], 0)).is_err());
    }

    #[test]
    fn j_ell_properties() {
        let [w, h, u1, u2] = standard_configuration(3, 1);
        let j = j_ell_int(&u1, &u2).unwrap();
        assert_eq!(j.j.mul(&j.j), RatMatrix::identity(8).neg());
        let swapped = j_ell_int(&u2, &u1).unwrap();
        assert_eq!(swapped.j, j.j.neg());
        let ws = weil_structure(&w, &h).unwrap();
        assert_eq!(j.j.mul(&ws.theta_prime.to_rat()), ws.theta_prime.to_rat().mul(&j.j));
        assert!(j_ell_int(&u1, &u1).is_err());
    }

    #[test]
    fn rational_plane() {
        // (3u₁ + 4u₂)/5, (4u₁ − 3u₂)/5
        let [_, _, u1, u2] = standard_configuration(2, 1);
        let (a, b) = (to_rat_vec(&u1.s_plus_coords()), to_rat_vec(&u2.s_plus_coords()));
        let comb = |x: i64, y: i64| -> Vec<Rat> {
            a.iter().zip(&b).map(|(p, q)| (p * Rat::from_integer(int(x)) + q * Rat::from_integer(int(y))) / Rat::from_integer(int(5))).collect()
        };
        let j = j_ell(&comb(3, 4), &comb(4, -3)).unwrap();
        assert_eq!(j.j.mul(&j.j), RatMatrix::identity(8).neg());
    }

    #[test]
    fn kahler_and_sign_flip() {
        let [w, h, u1, u2] = standard_configuration(2, 3);
        let ws = weil_structure(&w, &h).unwrap();
        let j = j_ell_int(&u1, &u2).unwrap();
        let g = kahler_metric(&ws, &j).unwrap();
        let g2 = kahler_metric(&weil_structure(&w, &h.scale(&int(-1))).unwrap(), &j).unwrap();
        assert_eq!(g2.sign, -g.sign);
        let (diag, definite) = clifford_definite_example();
        assert!(definite);
        assert!(diag.iter().all(|x| x.is_one()));
    }

    #[test]
    fn weil_multiplication() {
        let ws = weil_structure(&s_n(3), &SpinorElement::even_i64(0, [1, 0, 0, 0, 0, 1], 0)).unwrap();
        assert!(weil_multiplication_check(&ws, &int(1), &int(0)));
        assert!(weil_multiplication_check(&ws, &int(0), &int(1)));
        assert!(weil_multiplication_check(&ws, &int(2), &int(1)));
    }

    #[test]
    fn discriminant_for_small_cases() {
        let mut rng = suite_rng(1, "discriminant");
        for (n, k) in [(1, 1), (3, 2), (6, 5)] {
            let (w, h) = random_wh(n, k, &mut rng);
            let ws = weil_structure(&w, &h).unwrap();
            let wit = hermitian_and_discriminant(&ws, &mut rng).unwrap();
            assert!(wit.h_orthogonal);
            assert!(wit.is_square);
            assert_eq!(wit.det_psi, wit.expected);
            assert!(wit.eta_checks);
        }
    }

    #[test]
    fn suites_pass() {
        let mut rng = suite_rng(0, "weil");
        for c in weil_suite(3, None, 10, &mut rng).unwrap() {
            assert!(c.passed(), "{}: {}", c.name, c.detail);
        }
        for c in discriminant_suite(3, 4, &mut rng) {
            assert!(c.passed(), "{}: {}", c.name, c.detail);
        }
    }
}
