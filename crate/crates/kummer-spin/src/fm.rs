//! Cohomological actions of tensorization by a line bundle and of the Fourier–Mukai
//! transform with the Poincaré bundle.
//!
//! The dual surface X̂ is modeled by the dual basis f₁..f₄ with ι(e_i*) = f_i and
//! ∫ f₁f₂f₃f₄ = 1, so H*(X̂) uses the same spinor coordinates as H*(X).

use num_traits::Zero;

use crate::report::Check;
use crate::exact_linalg::{int, Int, IntMatrix, RatMatrix};
use crate::spinor::{
    clifford_embed, degree, even_indices, group_flags, h2_indices, index_of, odd_indices, pairing_s, subsets,
    wedge_sign, CliffordElement, SpinorElement, SPIN_DIM, V_DIM,
};
use crate::triality::{m_tilde, minus_one, mu_tilde, AXAutomorphism, Block};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LineBundleClass {
    /// c₁ in the basis e12, e13, e14, e23, e24, e34.
    pub c1: Vec<Int>,
}

impl LineBundleClass {
    pub fn new(c1: Vec<Int>) -> Self {
        assert_eq!(c1.len(), 6, "c1 lives in a rank 6 lattice");
        LineBundleClass { c1 }
    }

    pub fn from_i64(c1: [i64; 6]) -> Self {
        Self::new(c1.iter().map(|&x| int(x)).collect())
    }

    pub fn trivial() -> Self {
        Self::from_i64([0; 6])
    }

    pub fn c1_class(&self) -> SpinorElement {
        SpinorElement::even(Int::zero(), &self.c1, Int::zero())
    }

    /// ∫c₁∧c₁ / 2, an integer because ∧²H¹ is even.
    pub fn half_square(&self) -> Int {
        let c = self.c1_class();
        c.wedge(&c).integral() / int(2)
    }

    /// ch(F) = (1, c₁, c₁²/2)
    pub fn chern_character(&self) -> SpinorElement {
        SpinorElement::even(int(1), &self.c1, self.half_square())
    }

    pub fn dual(&self) -> Self {
        Self::new(self.c1.iter().map(|x| -x).collect())
    }

    pub fn tensor(&self, o: &Self) -> Self {
        Self::new(self.c1.iter().zip(&o.c1).map(|(a, b)| a + b).collect())
    }

    /// F̂ with c₁(F̂) = ι(PD(c₁(F))).
    pub fn hat(&self) -> Self {
        Self::new(iota_pd(&self.c1_class()).h2())
    }
}

fn wedge_matrix(x: &SpinorElement) -> IntMatrix {
    let cols: Vec<Vec<Int>> =
        (0..SPIN_DIM).map(|j| x.wedge(&SpinorElement::basis(subsets()[j])).coords).collect();
    IntMatrix::from_columns(SPIN_DIM, &cols)
}

/// φ_F on S: wedge with ch(F).
pub fn tensor_clifford(f: &LineBundleClass) -> CliffordElement {
    CliffordElement::new(wedge_matrix(&f.chern_character()))
}

/// φ_F on A_X as μ̃ of the Spin element realizing tensorization.
pub fn phi_f(f: &LineBundleClass) -> AXAutomorphism {
    mu_tilde(&tensor_clifford(f)).expect("tensorization is a Spin element")
}

/// ι∘PD_X on each degree: e_S ↦ (∫e_S∧e_{S^c})·f_{S^c}.
pub fn iota_pd(x: &SpinorElement) -> SpinorElement {
    let masks = subsets();
    let mut out = SpinorElement::zero();
    for i in 0..SPIN_DIM {
        if x.coords[i].is_zero() {
            continue;
        }
        let s = masks[i];
        let c = 0b1111 ^ s;
        out.coords[index_of(c)] += int(wedge_sign(s, c) as i64) * &x.coords[i];
    }
    out
}

/// PD_X̂⁻¹((ι*)⁻¹(θ)): the class c on X̂ with ∫c∧f_T = coefficient of e_T in θ.
pub fn pd_hat_inverse_of_dual(theta: &SpinorElement) -> SpinorElement {
    let masks = subsets();
    let mut out = SpinorElement::zero();
    for i in 0..SPIN_DIM {
        if theta.coords[i].is_zero() {
            continue;
        }
        let t = masks[i];
        let c = 0b1111 ^ t;
        out.coords[index_of(c)] += int(wedge_sign(c, t) as i64) * &theta.coords[i];
    }
    out
}

/// φ_P = (−1)^{i(i+1)/2}·ι∘PD_X on degree i.
pub fn phi_p_matrix() -> IntMatrix {
    let cols: Vec<Vec<Int>> = (0..SPIN_DIM)
        .map(|j| {
            let d = degree(j);
            let sign = if (d * (d + 1) / 2).is_multiple_of(2) { 1 } else { -1 };
            iota_pd(&SpinorElement::basis(subsets()[j])).scale(&int(sign)).coords
        })
        .collect();
    IntMatrix::from_columns(SPIN_DIM, &cols)
}

/// φ_P(w, θ) = −(ι(θ), (ι*)⁻¹(w))
pub fn varphi_p() -> IntMatrix {
    IntMatrix::from_fn(V_DIM, V_DIM, |r, c| if r % 4 == c % 4 && r / 4 != c / 4 { int(-1) } else { int(0) })
}

/// φ_P: A_X → A_X̂ combining varphi_P on V and φ_P on S.
pub fn phi_p_ax() -> AXAutomorphism {
    let p = phi_p_matrix();
    let (o, e) = (odd_indices(), even_indices());
    let mut m = IntMatrix::zeros(24, 24);
    m.set_block(0, 0, &varphi_p());
    m.set_block(8, 8, &p.submatrix(&o, &o));
    m.set_block(16, 16, &p.submatrix(&e, &e));
    m.set_block(8, 16, &p.submatrix(&o, &e));
    m.set_block(16, 8, &p.submatrix(&e, &o));
    AXAutomorphism::from_int(&m)
}

fn check(name: &str, identity: &str, passed: bool, detail: String) -> Check {
    Check::new(name, identity, passed, detail)
}

fn basis(i: usize) -> SpinorElement {
    SpinorElement::basis(subsets()[i])
}

/// The three comparisons between the Poincaré dualities of X and X̂.
pub fn verify_two_poincare_dualities() -> Vec<Check> {
    let mut topo = true;
    let mut compare = true;
    for i in 0..SPIN_DIM {
        for j in 0..SPIN_DIM {
            if degree(i) + degree(j) != 4 {
                continue;
            }
            let lhs = basis(i).wedge(&basis(j)).integral();
            let rhs = iota_pd(&basis(i)).wedge(&iota_pd(&basis(j))).integral();
            topo &= lhs == rhs;
        }
        let sign = if degree(i).is_multiple_of(2) { int(1) } else { int(-1) };
        compare &= pd_hat_inverse_of_dual(&basis(i)) == iota_pd(&basis(i)).scale(&sign);
    }
    let p = phi_p_matrix();
    let mut iso = true;
    for i in 0..SPIN_DIM {
        for j in 0..SPIN_DIM {
            let (pi, pj) = (SpinorElement::new(p.col(i)), SpinorElement::new(p.col(j)));
            iso &= pairing_s(&basis(i), &basis(j)) == pairing_s(&pi, &pj);
        }
    }
    vec![
        check("pd_topological_pairing", "∫θ∧ω = ∫ι(PD θ)∧ι(PD ω)", topo, "all complementary basis pairs".into()),
        check("pd_comparison", "PD_X̂⁻¹((ι*)⁻¹θ) = (−1)^j ι(PD θ)", compare, "all 16 basis classes".into()),
        check("phi_p_isometry", "(θ,ω)_S = (φ_P θ, φ_P ω)_S", iso, "all 256 basis pairs".into()),
    ]
}

/// ι(PD(β∧θ)) = D_{(ι*)⁻¹θ}(ι(PD β)) for β ∈ H², θ ∈ H¹.
pub fn verify_derivative_conjugation() -> Check {
    let mut ok = true;
    for &b in &h2_indices() {
        for i in 0..4 {
            let theta = SpinorElement::basis(1 << i);
            let lhs = iota_pd(&basis(b).wedge(&theta));
            let mut v = [0i64; 8];
            v[4 + i] = 1;
            let d = clifford_embed(&crate::lattice::LatticeVector::from_i64(&v));
            ok &= lhs == d.act(&iota_pd(&basis(b)));
        }
    }
    check("derivative_conjugation", "ι(PD(β∧θ)) = D_{(ι*)⁻¹θ}(ι(PD β))", ok, "β over H² basis, θ over H¹ basis".into())
}

/// m(varphi_P(v)) = φ_P∘m(v)∘φ_P⁻¹ for each basis vector v of V.
pub fn verify_phi_p_equivariance() -> Vec<Check> {
    let p = phi_p_matrix().to_rat();
    let pinv = p.inverse().expect("phi_P is invertible");
    let vp = varphi_p();
    (0..V_DIM)
        .map(|k| {
            let mut e = [0i64; 8];
            e[k] = 1;
            let v = crate::lattice::LatticeVector::from_i64(&e);
            let image = crate::lattice::LatticeVector::new(vp.mul_vec(&v.coords));
            let lhs = clifford_embed(&image).matrix.to_rat();
            let rhs = p.mul(&clifford_embed(&v).matrix.to_rat()).mul(&pinv);
            check(
                &format!("phi_p_equivariance_{k}"),
                "m(varphi_P v) = φ_P m(v) φ_P⁻¹",
                lhs == rhs,
                format!("basis vector {k}"),
            )
        })
        .collect()
}

pub fn s_vector() -> SpinorElement {
    SpinorElement::even_i64(1, [0; 6], 1)
}

fn spinor_apply(g: &CliffordElement, s: &SpinorElement) -> SpinorElement {
    g.act(s)
}

fn inverse_tensor(f: &LineBundleClass) -> CliffordElement {
    tensor_clifford(&f.dual())
}

fn shift() -> AXAutomorphism {
    minus_one()
}

/// Reflection-lift identities for line bundles F₁, F₂ with s = ŝ = (1,0,1).
pub fn verify_reflection_lifts(f1: &LineBundleClass, f2: &LineBundleClass) -> Vec<Check> {
    let s = s_vector();
    let p = phi_p_ax();
    let pinv = p.inverse();
    let m_s = m_tilde(&s).expect("(s,s) = 2");
    let phi1 = phi_f(f1);
    let phi1_inv = phi1.inverse();
    let f1_s = spinor_apply(&tensor_clifford(f1), &s);
    let m_f1s = m_tilde(&f1_s).expect("φ_F preserves (s,s)");

    let lhs_a = pinv.compose(&phi_f(&f1.hat())).compose(&p).compose(&phi1_inv);
    let rhs_a = m_s.compose(&m_f1s);
    let refl = |y: &SpinorElement| crate::triality::s_plus_reflection(y).expect("square 2").to_rat();
    let s_plus_ok = lhs_a.block(Block::SPlus, Block::SPlus) == refl(&s).mul(&refl(&f1_s));

    let lhs_b1 = pinv.compose(&m_s).compose(&p);
    let lhs_b2 = phi1.compose(&m_s).compose(&phi1_inv);

    let f2_inv_s = spinor_apply(&inverse_tensor(f2), &s);
    let f1_inv_s = spinor_apply(&inverse_tensor(f1), &s);
    let first = phi_f(&f1.hat()).inverse().compose(&shift()).compose(&p).compose(&phi1);
    let second = phi_f(f2).inverse().compose(&shift()).compose(&pinv).compose(&phi_f(&f2.hat()));
    let lhs_c = second.compose(&first);
    let rhs_c = m_tilde(&f2_inv_s).unwrap().compose(&m_tilde(&f1_inv_s).unwrap());

    let hat_ok = {
        let ph = SpinorElement::new(phi_p_matrix().mul_vec(&f1.chern_character().coords));
        f1.hat().c1.iter().zip(ph.h2()).all(|(a, b)| *a == -b)
    };
    let detail = format!("c1(F1) = {:?}, c1(F2) = {:?}", ints(&f1.c1), ints(&f2.c1));
    vec![
        check("fm_two_reflections", "μ̃(φ_P⁻¹φ_F̂φ_Pφ_F⁻¹) = m̃_s·m̃_{φ_F(s)}", lhs_a == rhs_a, detail.clone()),
        check("fm_two_reflections_s_plus", "S⁺ action = R_s∘R_{φ_F(s)}", s_plus_ok, detail.clone()),
        check("fm_conjugate_m_s_by_phi_p", "φ_P⁻¹ m̃_ŝ φ_P = m̃_s", lhs_b1 == m_s, detail.clone()),
        check("fm_conjugate_m_s_by_phi_f", "φ̃_F m̃_s φ̃_F⁻¹ = m̃_{φ_F(s)}", lhs_b2 == m_f1s, detail.clone()),
        check(
            "fm_two_line_bundles",
            "composite ↦ m̃_{φ_{F₂}⁻¹(s)}∘m̃_{φ_{F₁}⁻¹(s)}",
            lhs_c == rhs_c,
            detail.clone(),
        ),
        check("fm_dual_line_bundle", "c₁(F̂) = ι(PD(c₁(F)))", hat_ok, detail),
    ]
}

fn ints(v: &[Int]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Whether the Clifford realization of φ_F lies in Spin(V).
pub fn phi_f_in_spin(f: &LineBundleClass) -> bool {
    group_flags(&tensor_clifford(f)).map(|g| g.in_spin).unwrap_or(false)
}

/// V-action of φ_F from the explicit formula (w, θ) ↦ (w − D_θ(c₁), θ).
pub fn phi_f_on_v_formula(f: &LineBundleClass) -> RatMatrix {
    let c1 = f.c1_class();
    let mut m = IntMatrix::identity(V_DIM);
    for k in 0..4 {
        let mut v = [0i64; 8];
        v[4 + k] = 1;
        let d = clifford_embed(&crate::lattice::LatticeVector::from_i64(&v)).act(&c1);
        for i in 0..4 {
            m.set(i, 4 + k, -d.coords[index_of(1 << i)].clone());
        }
    }
    m.to_rat()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn iota_pd_of_e1() {
        assert_eq!(iota_pd(&SpinorElement::basis(0b0001)), SpinorElement::basis(0b1110));
    }

    #[test]
    fn chern_character_and_s_plus_action() {
        let f = LineBundleClass::from_i64([1, 0, 0, 0, 0, 3]);
        assert_eq!(f.chern_character(), SpinorElement::even_i64(1, [1, 0, 0, 0, 0, 3], 3));
        let g = phi_f(&f);
        let one = crate::triality::AXElement::from_s_plus(&SpinorElement::one());
        let img = g.apply_int(&one).unwrap();
        assert_eq!(img.s_plus, f.chern_character().s_plus_coords());
    }

    #[test]
    fn phi_f_on_v_example() {
        let f = LineBundleClass::from_i64([1, 0, 0, 0, 0, 0]);
        let v = phi_f(&f).block(Block::V, Block::V);
        assert_eq!(v, phi_f_on_v_formula(&f));
        // (0, e₁*) ↦ (−e₂, e₁*)
        let col = v.col(4);
        assert_eq!(col[1], -crate::exact_linalg::rat(1, 1));
        assert_eq!(col[4], crate::exact_linalg::rat(1, 1));
    }

    #[test]
    fn group_law_and_spin() {
        let f = LineBundleClass::from_i64([2, -1, 0, 1, 0, 1]);
        assert!(phi_f(&f).compose(&phi_f(&f.dual())).is_identity());
        assert!(phi_f_in_spin(&f));
    }

    #[test]
    fn dualities_and_equivariance() {
        assert!(verify_two_poincare_dualities().iter().all(|c| c.passed()));
        assert!(verify_derivative_conjugation().passed());
        assert!(verify_phi_p_equivariance().iter().all(|c| c.passed()));
    }

    #[test]
    fn lifts_for_trivial_and_simple_bundles() {
        let t = LineBundleClass::trivial();
        for c in verify_reflection_lifts(&t, &t) {
            assert!(c.passed(), "{}", c.name);
        }
        let f = LineBundleClass::from_i64([1, 0, 0, 0, 0, 0]);
        for c in verify_reflection_lifts(&f, &t) {
            assert!(c.passed(), "{}", c.name);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn lifts_hold(a in proptest::array::uniform6(-2i64..=2), b in proptest::array::uniform6(-2i64..=2)) {
            let (f1, f2) = (LineBundleClass::from_i64(a), LineBundleClass::from_i64(b));
            for c in verify_reflection_lifts(&f1, &f2) {
                prop_assert!(c.passed(), "{}", c.name);
            }
        }

        #[test]
        fn phi_f_matches_formula(a in proptest::array::uniform6(-3i64..=3)) {
            let f = LineBundleClass::from_i64(a);
            prop_assert_eq!(phi_f(&f).block(Block::V, Block::V), phi_f_on_v_formula(&f));
        }
    }
}
