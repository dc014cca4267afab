//! Chern character calculus on H*(X×X̂,ℚ) = ∧*(e₁..e₄, f₁..f₄) and the Cayley class in ∧⁴V.

use std::sync::OnceLock;

use num_traits::{One, Zero};
use rand::{Rng, RngExt};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact_linalg::{int, rat, rat_from_int, Int, IntMatrix, Rat, RowSpace};
use crate::lattice::{rat_json, IntLattice, LatticeVector};
use crate::report::Check;
use crate::spinor::{s_plus_lattice, SpinorElement};
use crate::stabilizer::{
    random_sl4, s_n, sl4_embed, spinor_pair_gen, StabilizerError, StabilizerGenerator,
};

pub const EXT_DIM: usize = 256;
pub const WEDGE4_DIM: usize = 70;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("class has rank zero")]
    ZeroRank,
    #[error("generator {0} does not fix the required vectors")]
    NotStabilizing(String),
    #[error("no vectors of square ±2 found in the orthogonal complement")]
    SearchExhausted,
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
}

/// Sign of e_S ∧ e_T over eight generators; zero on overlap.
fn mask_sign(s: u16, t: u16) -> i64 {
    if s & t != 0 {
        return 0;
    }
    let mut inv = 0u32;
    for a in 0..8 {
        if s & (1 << a) != 0 {
            inv += (t & ((1u16 << a) - 1)).count_ones();
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Rational combination of monomials in e₁..e₄ (bits 0..3) and f₁..f₄ (bits 4..7).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtRingElement {
    pub coeffs: Vec<Rat>,
}

impl ExtRingElement {
    pub fn zero() -> Self {
        ExtRingElement { coeffs: vec![Rat::zero(); EXT_DIM] }
    }

    pub fn scalar(c: Rat) -> Self {
        let mut x = Self::zero();
        x.coeffs[0] = c;
        x
    }

    pub fn one() -> Self {
        Self::scalar(Rat::one())
    }

    pub fn monomial(mask: u16, c: Rat) -> Self {
        let mut x = Self::zero();
        x.coeffs[mask as usize] = c;
        x
    }

    /// The monomial x_{i₁}∧…∧x_{i_k} in the given order of generator indices.
    pub fn product_of(indices: &[usize]) -> Self {
        indices.iter().fold(Self::one(), |acc, &i| acc.mul(&Self::monomial(1 << i, Rat::one())))
    }

    pub fn bidegree(mask: usize) -> (u32, u32) {
        ((mask & 0x0f).count_ones(), (mask & 0xf0).count_ones())
    }

    pub fn add(&self, o: &Self) -> Self {
        ExtRingElement { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        ExtRingElement { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (s, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let sign = mask_sign(s as u16, t as u16);
                if sign != 0 {
                    out.coeffs[s | t] += a * b * Rat::from_integer(int(sign));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Part of total degree d.
    pub fn degree_part(&self, d: u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.coeffs.iter().enumerate() {
            if (m as u32).count_ones() == d {
                out.coeffs[m] = c.clone();
            }
        }
        out
    }

    /// exp of a nilpotent element without constant term.
    pub fn exp(&self) -> Self {
        let mut out = Self::one();
        let mut term = Self::one();
        for k in 1..=8 {
            term = term.mul(self).scale(&rat(1, k));
            out = out.add(&term);
        }
        out
    }

    /// (−1)^k on the part of degree 2k.
    pub fn dual(&self) -> Self {
        let mut out = self.clone();
        for (m, c) in out.coeffs.iter_mut().enumerate() {
            if (m as u32).count_ones() % 4 == 2 {
                *c = -c.clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| json!({ "monomial": monomial_name(m as u16), "coeff": rat_json(c) }))
            .collect();
        Value::Array(terms)
    }
}

fn monomial_name(mask: u16) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..8)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| if i < 4 { format!("e{}", i + 1) } else { format!("f{}", i - 3) })
        .collect::<Vec<_>>()
        .join("^")
}

/// c₁(P) = Σ eᵢ∧fᵢ
pub fn c1_poincare() -> ExtRingElement {
    (0..4).fold(ExtRingElement::zero(), |acc, i| acc.add(&ExtRingElement::product_of(&[i, 4 + i])))
}

/// π₁*[pt_X] = e₁e₂e₃e₄
pub fn point_x() -> ExtRingElement {
    ExtRingElement::monomial(0x0f, Rat::one())
}

/// π₂*[pt_X̂] = f₁f₂f₃f₄
pub fn point_x_hat() -> ExtRingElement {
    ExtRingElement::monomial(0xf0, Rat::one())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChClass {
    pub rank: Int,
    pub ch: ExtRingElement,
}

impl ChClass {
    pub fn new(ch: ExtRingElement) -> Self {
        let rank = ch.coeffs[0].to_integer();
        ChClass { rank, ch }
    }

    pub fn line_bundle(c1: &ExtRingElement) -> Self {
        Self::new(c1.exp())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.ch.add(&o.ch))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.ch.neg())
    }

    pub fn scale(&self, m: i64) -> Self {
        Self::new(self.ch.scale(&Rat::from_integer(int(m))))
    }

    pub fn tensor(&self, o: &Self) -> Self {
        Self::new(self.ch.mul(&o.ch))
    }

    pub fn dual(&self) -> Self {
        Self::new(self.ch.dual())
    }

    pub fn c1(&self) -> ExtRingElement {
        self.ch.degree_part(2)
    }
}

/// [Φ(F^∨)] = −n[𝒪] + π₂![ℂ_0̂] − n[P] + n²π₁![ℂ₀]
pub fn fm_class(n: u32) -> ChClass {
    let n = Rat::from_integer(int(n as i64));
    let ch = ExtRingElement::scalar(-n.clone())
        .add(&point_x_hat())
        .sub(&c1_poincare().exp().scale(&n))
        .add(&point_x().scale(&(&n * &n)));
    ChClass::new(ch)
}

/// Degree 4 part of ch(b)·exp(−c₁(b)/rank).
pub fn kappa2(b: &ChClass) -> Result<ExtRingElement, CayleyError> {
    if b.rank.is_zero() {
        return Err(CayleyError::ZeroRank);
    }
    let r = rat_from_int(&b.rank);
    let twist = b.c1().scale(&(-Rat::one() / r)).exp();
    Ok(b.ch.mul(&twist).degree_part(4))
}

/// c₂(b⊗b*) as −2·rank·κ₂(b).
pub fn c2_end(b: &ChClass) -> Result<ExtRingElement, CayleyError> {
    let k = kappa2(b)?;
    Ok(k.scale(&Rat::from_integer(int(-2) * &b.rank)))
}

/// c₂(b⊗b*) = −ch₂(b⊗b*) from the product ch(b)·ch(b*).
pub fn c2_end_direct(b: &ChClass) -> Result<ExtRingElement, CayleyError> {
    if b.rank.is_zero() {
        return Err(CayleyError::ZeroRank);
    }
    Ok(b.tensor(&b.dual()).ch.degree_part(4).neg())
}

/// Sorted 4-subsets of the V basis 0..8 (e₁..e₄ = 0..3, e₁*..e₄* = 4..7).
pub fn four_subsets() -> &'static [[usize; 4]] {
    static S: OnceLock<Vec<[usize; 4]>> = OnceLock::new();
    S.get_or_init(|| {
        let mut v = Vec::new();
        for a in 0..8 {
            for b in a + 1..8 {
                for c in b + 1..8 {
                    for d in c + 1..8 {
                        v.push([a, b, c, d]);
                    }
                }
            }
        }
        v
    })
}

fn four_index(q: &[usize; 4]) -> usize {
    four_subsets().iter().position(|x| x == q).expect("sorted 4-subset")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wedge4VElement {
    pub coords: Vec<Rat>,
}

impl Wedge4VElement {
    pub fn zero() -> Self {
        Wedge4VElement { coords: vec![Rat::zero(); WEDGE4_DIM] }
    }

    /// v_{i₁}∧v_{i₂}∧v_{i₃}∧v_{i₄} in the given order.
    pub fn monomial(idx: [usize; 4]) -> Self {
        let mut out = Self::zero();
        let mut sorted = idx;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return out;
        }
        let mut inv = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if idx[i] > idx[j] {
                    inv += 1;
                }
            }
        }
        out.coords[four_index(&sorted)] = if inv % 2 == 0 { Rat::one() } else { -Rat::one() };
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        Wedge4VElement { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Wedge4VElement { coords: self.coords.iter().map(|a| a * c).collect() }
    }

    /// Transport along eᵢ* ↔ fᵢ into degree 4 of H*(X×X̂).
    pub fn to_ext(&self) -> ExtRingElement {
        let mut out = ExtRingElement::zero();
        for (q, c) in four_subsets().iter().zip(&self.coords) {
            let mask: usize = q.iter().map(|i| 1usize << i).sum();
            out.coeffs[mask] = c.clone();
        }
        out
    }

    pub fn from_ext(x: &ExtRingElement) -> Self {
        let mut out = Self::zero();
        for (k, q) in four_subsets().iter().enumerate() {
            let mask: usize = q.iter().map(|i| 1usize << i).sum();
            out.coords[k] = x.coeffs[mask].clone();
        }
        out
    }

    pub fn is_proportional_to(&self, o: &Self) -> bool {
        let Some(k) = o.coords.iter().position(|c| !c.is_zero()) else {
            return self.coords.iter().all(Zero::is_zero);
        };
        let f = &self.coords[k] / &o.coords[k];
        !f.is_zero() && self.coords.iter().zip(&o.coords).all(|(a, b)| *a == &f * b)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = four_subsets()
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(q, c)| json!({ "indices": q, "coeff": rat_json(c) }))
            .collect();
        Value::Array(terms)
    }
}

/// α = Σ eᵢ∧eᵢ*, squared: Σ_{i≠j} eᵢ∧eᵢ*∧eⱼ∧eⱼ*.
pub fn alpha_squared() -> Wedge4VElement {
    let mut out = Wedge4VElement::zero();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                out = out.add(&Wedge4VElement::monomial([i, 4 + i, j, 4 + j]));
            }
        }
    }
    out
}

/// −N²α² + 4N³β + 4Nγ with β = e₁e₂e₃e₄ and γ = e₁*e₂*e₃*e₄*.
pub fn cayley_class(n: u32) -> Wedge4VElement {
    let n = Rat::from_integer(int(n as i64));
    alpha_squared()
        .scale(&-(&n * &n))
        .add(&Wedge4VElement::monomial([0, 1, 2, 3]).scale(&(rat(4, 1) * &n * &n * &n)))
        .add(&Wedge4VElement::monomial([4, 5, 6, 7]).scale(&(rat(4, 1) * &n)))
}

/// ∧⁴M on sorted 4-subsets: entry (R, C) is the minor on rows R, columns C.
pub fn wedge4_matrix(m: &IntMatrix) -> IntMatrix {
    let qs = four_subsets();
    IntMatrix::from_fn(WEDGE4_DIM, WEDGE4_DIM, |r, c| m.submatrix(&qs[r], &qs[c]).det())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantMode {
    WOnly,
    WAndH,
}

#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub dimension: usize,
    pub kernel: Vec<Wedge4VElement>,
}

fn fixes(g: &StabilizerGenerator, v: &SpinorElement) -> bool {
    g.s_plus_action().mul_vec(&v.s_plus_coords()) == v.s_plus_coords()
}

/// Dimension and basis of the common fixed space of ∧⁴ρ(g) on ∧⁴V.
pub fn invariant_rank(
    generators: &[StabilizerGenerator],
    w: &SpinorElement,
    h: Option<&SpinorElement>,
) -> Result<InvariantReport, CayleyError> {
    let mut rows = RowSpace::new(WEDGE4_DIM);
    for g in generators {
        if !fixes(g, w) || h.is_some_and(|h| !fixes(g, h)) {
            return Err(CayleyError::NotStabilizing(g.kind.name()));
        }
        let m = wedge4_matrix(&g.v_action()).sub(&IntMatrix::identity(WEDGE4_DIM));
        rows.insert_matrix(&m.to_rat());
    }
    let kernel: Vec<Wedge4VElement> = rows.kernel().into_iter().map(|coords| Wedge4VElement { coords }).collect();
    Ok(InvariantReport { dimension: kernel.len(), kernel })
}

/// Random vectors of square ±2 in the orthogonal complement of `fixed` inside S⁺.
pub fn random_square_two_vectors<R: Rng>(
    fixed: &[SpinorElement],
    sign: i64,
    count: usize,
    rng: &mut R,
) -> Result<Vec<SpinorElement>, CayleyError> {
    let l = s_plus_lattice();
    let vs: Vec<LatticeVector> = fixed.iter().map(|v| LatticeVector::new(v.s_plus_coords())).collect();
    let basis = l.orthogonal_complement(&vs);
    let b = IntMatrix::from_columns(8, &basis.iter().map(|v| v.coords.clone()).collect::<Vec<_>>());
    let sub = IntLattice::new("complement", b.transpose().mul(l.gram()).mul(&b)).expect("symmetric");
    let mut out = Vec::new();
    let target = int(2 * sign);
    for _ in 0..200_000 {
        if out.len() == count {
            return Ok(out);
        }
        let c: Vec<Int> = (0..basis.len()).map(|_| int(rng.random_range(-2i64..=2))).collect();
        let x = LatticeVector::new(c);
        if sub.square(&x).map(|s| s == target).unwrap_or(false) {
            out.push(SpinorElement::from_s_plus(&b.mul_vec(&x.coords)));
        }
    }
    Err(CayleyError::SearchExhausted)
}

/// Products of reflection pairs of both signs fixing w (and h), plus sl4 elements when h is absent.
pub fn stabilizer_generators<R: Rng>(
    w: &SpinorElement,
    h: Option<&SpinorElement>,
    count: usize,
    rng: &mut R,
) -> Result<Vec<StabilizerGenerator>, CayleyError> {
    let mut fixed = vec![w.clone()];
    fixed.extend(h.cloned());
    let mut gens = Vec::new();
    let sl4_fixes_w = w.is_even() && w.h2().iter().all(Zero::is_zero);
    while gens.len() < count {
        let k = gens.len() % 3;
        if k == 2 && h.is_none() && sl4_fixes_w {
            gens.push(sl4_embed(&random_sl4(rng))?);
            continue;
        }
        let sign = if k == 0 { 1 } else { -1 };
        let t = random_square_two_vectors(&fixed, sign, 2, rng)?;
        gens.push(spinor_pair_gen(&t[0], &t[1])?);
    }
    Ok(gens)
}

/// h = (0, A, 0)
pub fn h_from_a(a: &[Int]) -> SpinorElement {
    SpinorElement::even(Int::zero(), a, Int::zero())
}

pub fn cayley_suite<R: Rng>(n: u32, with_h: Option<&[Int]>, rng: &mut R) -> Result<Vec<Check>, CayleyError> {
    let mut out = Vec::new();
    let mut equal_all = true;
    let mut details = Vec::new();
    let mut ns: Vec<u32> = (2..=8).collect();
    if !ns.contains(&n) {
        ns.push(n);
    }
    for &m in &ns {
        let b = fm_class(m).neg();
        let kappa_route = c2_end(&b)?;
        let direct = c2_end_direct(&b)?;
        let ok = kappa_route == direct && Wedge4VElement::from_ext(&kappa_route) == cayley_class(m);
        equal_all &= ok;
        if !ok {
            details.push(format!("mismatch at n = {m}"));
        }
    }
    out.push(Check::new(
        "cayley_equals_c2end",
        "c₂(End) of −[Φ(F^∨)] = −n²α² + 4n³β + 4nγ under eᵢ* ↔ fᵢ",
        equal_all,
        if details.is_empty() { format!("n in {ns:?}, κ route and direct route agree") } else { details.join("; ") },
    ));

    let b = fm_class(n).neg();
    let kappa_expected = c1_poincare()
        .pow(2)
        .scale(&rat(n as i64, 4))
        .sub(&point_x().scale(&Rat::from_integer(int((n * n) as i64))))
        .sub(&point_x_hat());
    out.push(Check::new(
        "kappa2",
        "κ₂(−[Φ(F^∨)]) = (n/4)c₁(P)² − n²π₁*[pt] − π₂*[pt]",
        kappa2(&b)? == kappa_expected && b.rank == int(2 * n as i64),
        format!("rank {}", b.rank),
    ));

    let w = s_n(n);
    let gens = stabilizer_generators(&w, None, 24, rng)?;
    let report = invariant_rank(&gens, &w, None)?;
    let cay = cayley_class(n);
    let spanned = report.dimension == 1 && report.kernel[0].is_proportional_to(&cay);
    out.push(
        Check::new(
            "invariant_rank",
            "dim (∧⁴V)^{Spin(V)_w} = 1, spanned by the Cayley class",
            spanned,
            format!("{} generators, invariant dimension {}", gens.len(), report.dimension),
        )
        .with_data(json!({
            "invariant_rank": report.dimension,
            "generators": gens.len(),
            "kernel": report.kernel.iter().map(Wedge4VElement::to_json).collect::<Vec<_>>(),
            "cayley_class": cay.to_json(),
        })),
    );

    let mut fixed_by_all = true;
    let mut sampled = 0;
    while sampled < 50 {
        let i = rng.random_range(0..gens.len());
        let j = rng.random_range(0..gens.len());
        let g = gens[i].compose(&gens[j]);
        let img = wedge4_matrix(&g.v_action()).to_rat().mul_vec(&cay.coords);
        fixed_by_all &= img == cay.coords;
        sampled += 1;
    }
    out.push(Check::new(
        "cayley_class_invariant",
        "∧⁴ρ(g)(c_w) = c_w",
        fixed_by_all,
        format!("{sampled} products of generators"),
    ));

    let h = match with_h {
        Some(c) if c.len() == 8 => SpinorElement::from_s_plus(c),
        Some(a) => h_from_a(a),
        None => h_from_a(&crate::exact_linalg::int_vec(&[1, 0, 0, 0, 0, 1])),
    };
    let hh = s_plus_lattice().square(&LatticeVector::new(h.s_plus_coords())).unwrap();
    let gens_h = stabilizer_generators(&w, Some(&h), 24, rng)?;
    let rep_h = invariant_rank(&gens_h, &w, Some(&h))?;
    let contains_cay = {
        let mut rs = RowSpace::new(WEDGE4_DIM);
        for k in &rep_h.kernel {
            rs.insert(&k.coords);
        }
        !rs.insert(&cay.coords)
    };
    out.push(
        Check::new(
            "invariant_rank_w_h",
            "dim (∧⁴V)^{Spin(V)_{w,h}} = 3",
            rep_h.dimension == 3 && contains_cay,
            format!("(h,h) = {hh}, {} generators, invariant dimension {}", gens_h.len(), rep_h.dimension),
        )
        .with_data(json!({
            "invariant_rank": rep_h.dimension,
            "generators": gens_h.len(),
            "kernel": rep_h.kernel.iter().map(Wedge4VElement::to_json).collect::<Vec<_>>(),
        })),
    );
    out.push(Check::skipped(
        "sheaf_content",
        "E_F reflexive and locally free off a point",
        "only Chern classes are computed",
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::suite_rng;
    use proptest::prelude::*;

    fn r(n: i64) -> Rat {
        Rat::from_integer(int(n))
    }

    #[test]
    fn fm_class_low_degrees() {
        for n in 1..5i64 {
            let b = fm_class(n as u32).neg();
            let c = c1_poincare();
            let expected = ExtRingElement::scalar(r(2 * n))
                .add(&c.scale(&r(n)))
                .add(&c.pow(2).scale(&rat(n, 2)))
                .sub(&point_x().scale(&r(n * n)))
                .sub(&point_x_hat());
            let low = (0..=4).fold(ExtRingElement::zero(), |acc, d| acc.add(&b.ch.degree_part(d)));
            assert_eq!(low, expected);
            assert_eq!(b.rank, int(2 * n));
        }
    }

    #[test]
    fn kappa_of_line_bundle_vanishes() {
        let c = ExtRingElement::product_of(&[0, 5]).add(&ExtRingElement::product_of(&[2, 3]).scale(&r(3)));
        assert!(kappa2(&ChClass::line_bundle(&c)).unwrap().is_zero());
        assert!(c2_end(&ChClass::line_bundle(&c)).unwrap().is_zero());
        assert!(c2_end_direct(&ChClass::line_bundle(&c)).unwrap().is_zero());
        assert_eq!(kappa2(&ChClass::new(point_x())), Err(CayleyError::ZeroRank));
    }

    #[test]
    fn c2_end_formula() {
        for n in 2..=8i64 {
            let b = fm_class(n as u32).neg();
            let expected = c1_poincare()
                .pow(2)
                .scale(&r(-n * n))
                .add(&point_x().scale(&r(4 * n * n * n)))
                .add(&point_x_hat().scale(&r(4 * n)));
            assert_eq!(c2_end(&b).unwrap(), expected);
            assert_eq!(c2_end_direct(&b).unwrap(), expected);
            assert_eq!(Wedge4VElement::from_ext(&expected), cayley_class(n as u32));
        }
    }

    #[test]
    fn alpha_squared_expansion() {
        let mut expected = Wedge4VElement::zero();
        for i in 0..4 {
            for j in i + 1..4 {
                expected = expected.add(&Wedge4VElement::monomial([i, 4 + i, j, 4 + j]).scale(&r(2)));
            }
        }
        assert_eq!(alpha_squared(), expected);
        let c = cayley_class(3);
        assert_eq!(c.coords[four_index(&[0, 1, 2, 3])], r(108));
        assert_eq!(c.coords[four_index(&[4, 5, 6, 7])], r(12));
    }

    #[test]
    fn identity_generator_gives_full_rank() {
        let g = sl4_embed(&IntMatrix::identity(4)).unwrap();
        assert_eq!(invariant_rank(&[g], &s_n(3), None).unwrap().dimension, 70);
    }

    #[test]
    fn invariant_ranks() {
        let mut rng = suite_rng(0, "cayley");
        let checks = cayley_suite(3, None, &mut rng).unwrap();
        for c in &checks {
            assert!(!c.failed(), "{}: {}", c.name, c.detail);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn ch_multiplicative(a in proptest::collection::vec(-3i64..=3, 16), b in proptest::collection::vec(-3i64..=3, 16)) {
            let degree2: Vec<u16> = (0..256u16).filter(|m| m.count_ones() == 2).take(16).collect();
            let build = |v: &[i64]| degree2.iter().zip(v).fold(ExtRingElement::zero(), |acc, (m, c)| {
                acc.add(&ExtRingElement::monomial(*m, r(*c)))
            });
            let (x, y) = (build(&a), build(&b));
            let l1 = ChClass::line_bundle(&x);
            let l2 = ChClass::line_bundle(&y);
            prop_assert_eq!(l1.tensor(&l2), ChClass::line_bundle(&x.add(&y)));
            let e = l1.add(&l2);
            prop_assert_eq!(c2_end(&e).unwrap(), c2_end_direct(&e).unwrap());
        }

        #[test]
        fn kappa_scales(m in 1i64..5, n in 1u32..5) {
            let b = fm_class(n).neg();
            prop_assert_eq!(kappa2(&b.scale(m)).unwrap(), kappa2(&b).unwrap().scale(&r(m)));
        }
    }
}
