//! Named verification suites and the dispatcher used by the CLI.

use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rand::{Rng, RngExt};
use serde_json::json;

use crate::cayley::cayley_suite;
use crate::exact_linalg::{int, to_int_vec, Int, IntMatrix, RatMatrix};
use crate::fm::{
    verify_derivative_conjugation, verify_phi_p_equivariance, verify_reflection_lifts, verify_two_poincare_dualities,
    LineBundleClass,
};
use crate::lattice::{reflection, LatticeVector};
use crate::report::{suite_rng, Check, SuiteReport};
use crate::spinor::{
    clifford_embed, degree, generator, group_flags, monomial_matrix, quadratic_v, subsets, tau_sign, v_gram,
    v_lattice, CliffordElement, SpinorElement, SPIN_DIM, V_DIM,
};
use crate::stabilizer::{convention_self_test, det_chi_suite, gamma_suite, modn_suite, stabilizer_suite};
use crate::triality::{build_j, multiplication_matrix, AXElement, Block, AX_DIM};
use crate::weil::{discriminant_suite, weil_suite};

pub const ALL_SUITES: [&str; 10] =
    ["clifford", "triality", "fm", "stabilizer", "detchi", "modn", "gamma", "cayley", "weil", "discriminant"];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub n: u32,
    pub samples: usize,
    /// Extra h coordinates for cayley (6 or 8 entries).
    pub cayley_h: Option<Vec<Int>>,
    /// h for weil (6 or 8 entries).
    pub weil_h: Option<Vec<Int>>,
}

impl SuiteOptions {
    pub fn new(n: u32) -> Self {
        SuiteOptions { n, samples: 50, cayley_h: None, weil_h: None }
    }
}

fn random_v<R: Rng>(bound: i64, rng: &mut R) -> LatticeVector {
    LatticeVector::new((0..V_DIM).map(|_| int(rng.random_range(-bound..=bound))).collect())
}

fn random_anisotropic<R: Rng>(rng: &mut R) -> LatticeVector {
    loop {
        let v = random_v(2, rng);
        if !quadratic_v(&v).is_zero() {
            return v;
        }
    }
}

fn random_unit_vector<R: Rng>(rng: &mut R) -> LatticeVector {
    loop {
        let v = random_v(2, rng);
        let q = quadratic_v(&v);
        if q == Int::one() || q == -Int::one() {
            return v;
        }
    }
}

fn random_clifford<R: Rng>(rng: &mut R) -> CliffordElement {
    let mut c = vec![Int::zero(); 256];
    for _ in 0..rng.random_range(1..6) {
        c[rng.random_range(0..256usize)] += int(rng.random_range(-3..=3));
    }
    CliffordElement::from_monomials(&c)
}

fn random_g_element<R: Rng>(rng: &mut R) -> CliffordElement {
    let mut x = CliffordElement::one();
    for _ in 0..rng.random_range(1..=4) {
        x = x.multiply(&clifford_embed(&random_anisotropic(rng)));
    }
    x
}

pub fn clifford_suite<R: Rng>(rng: &mut R) -> Vec<Check> {
    let mut out = Vec::new();
    let g = v_gram();
    let basis_ok = (0..V_DIM).all(|a| {
        (0..V_DIM).all(|b| {
            let ab = generator(a).mul(generator(b)).add(&generator(b).mul(generator(a)));
            ab == IntMatrix::identity(SPIN_DIM).scale(g.get(a, b))
        })
    });
    let lat = v_lattice();
    let mut random_ok = 0;
    for _ in 0..1000 {
        let (v, w) = (random_v(5, rng), random_v(5, rng));
        let (mv, mw) = (clifford_embed(&v), clifford_embed(&w));
        let anti = mv.multiply(&mw).add(&mw.multiply(&mv));
        if anti.as_scalar() == Some(lat.pairing(&v, &w).unwrap()) {
            random_ok += 1;
        }
    }
    out.push(Check::new(
        "clifford_relation",
        "v·w + w·v = (v,w) on V",
        basis_ok && random_ok == 1000,
        format!("64 basis pairs {}, random pairs {random_ok}/1000", if basis_ok { "ok" } else { "FAILED" }),
    ));

    let rows: Vec<Vec<Int>> = (0u16..256).map(|m| monomial_matrix(m as u8).entries().to_vec()).collect();
    let rank = IntMatrix::from_rows(&rows).rank();
    out.push(Check::new("monomials_independent", "the 256 monomials e_I span End(S)", rank == 256, format!("rank {rank}")));

    let round = (0..100)
        .filter(|_| {
            let x = random_clifford(rng);
            CliffordElement::from_monomials(&x.monomial_decompose()) == x
        })
        .count();
    out.push(Check::new(
        "monomial_round_trip",
        "x = Σ c_I e_I recovers x exactly",
        round == 100,
        format!("{round}/100 elements"),
    ));

    let anti_mult = (0..100)
        .filter(|_| {
            let (x, y) = (random_clifford(rng), random_clifford(rng));
            x.multiply(&y).tau() == y.tau().multiply(&x.tau()) && x.tau().tau() == x
        })
        .count();
    out.push(Check::new("tau_anti_multiplicative", "τ(xy) = τ(y)τ(x)", anti_mult == 100, format!("{anti_mult}/100 pairs")));

    let on_v = (0..100)
        .filter(|_| {
            let m = clifford_embed(&random_v(5, rng));
            m.tau() == m
        })
        .count();
    out.push(Check::new("tau_on_v", "τ|_V = id", on_v == 100, format!("{on_v}/100 vectors")));

    let degree_ok = (0..SPIN_DIM).all(|i| {
        let d = degree(i);
        let expected = if (d * (d.saturating_sub(1)) / 2).is_multiple_of(2) { 1 } else { -1 };
        let b = SpinorElement::basis(subsets()[i]);
        tau_sign(d) == expected && b.tau() == b.scale(&int(expected as i64))
    }) && (0u16..256).filter(|m| m & (m >> 4) & 0xf == 0).all(|m| {
        let d = (m as u8).count_ones();
        let e = CliffordElement::new(monomial_matrix(m as u8));
        e.tau() == CliffordElement::new(e.matrix.scale(&int(tau_sign(d) as i64)))
    });
    out.push(Check::new("tau_degree_sign", "τ = (−1)^{i(i−1)/2} in degree i", degree_ok, "16 spinor basis vectors and the 81 monomials in pairwise orthogonal generators"));

    let mut chars_ok = 0;
    for _ in 0..200 {
        let (x, y) = (random_g_element(rng), random_g_element(rng));
        let (fx, fy, fxy) = match (group_flags(&x), group_flags(&y), group_flags(&x.multiply(&y))) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            _ => continue,
        };
        if fxy.norm == &fx.norm * &fy.norm && fxy.orientation == &fx.orientation * &fy.orientation {
            chars_ok += 1;
        }
    }
    out.push(Check::new(
        "norm_ort_multiplicative",
        "N(xy) = N(x)N(y) and ort(xy) = ort(x)ort(y) on G(V)",
        chars_ok == 200,
        format!("{chars_ok}/200 pairs"),
    ));

    let mut refl_ok = 0;
    let mut signs = [0usize; 2];
    for _ in 0..100 {
        let v = random_unit_vector(rng);
        signs[usize::from(quadratic_v(&v).is_positive())] += 1;
        let r = reflection(&lat, &v).map(|r| r.matrix.to_rat());
        let rho = group_flags(&clifford_embed(&v)).map(|f| f.rho.neg());
        if let (Ok(r), Ok(rho)) = (r, rho) {
            if r == rho {
                refl_ok += 1;
            }
        }
    }
    out.push(Check::new(
        "rho_is_reflection",
        "−ρ(v) = R_v for Q(v) = ±1",
        refl_ok == 100,
        format!("{refl_ok}/100 vectors ({} with Q = 1, {} with Q = −1)", signs[1], signs[0]),
    ));
    out
}

pub fn triality_suite() -> Vec<Check> {
    let j = build_j();
    let f = j.flags();
    let jinv = j.inverse();
    let conj = (0..AX_DIM).all(|k| {
        let x = AXElement::basis(k);
        let Some(c) = to_int_vec(&j.apply(&x)) else { return false };
        let lhs: RatMatrix = multiplication_matrix(&AXElement::from_coords(&c)).to_rat();
        lhs == j.matrix.mul(&multiplication_matrix(&x).to_rat()).mul(&jinv.matrix)
    });
    let perm = f.block_permutation.map(|p| p.iter().map(|b| b.name()).collect::<Vec<_>>());
    vec![
        Check::new("J3_identity", "J³ = id", j.matrix.pow(3).is_identity(), "24×24 exact"),
        Check::new("J_isometry", "J preserves the A_X pairing", f.is_isometry, ""),
        Check::new("J_automorphism", "J(a·b) = J(a)·J(b)", f.is_algebra_automorphism, "all 24×24 basis pairs"),
        Check::new(
            "J_block_permutation",
            "J: V → S⁺ → S⁻ → V",
            f.block_permutation == Some([Block::SPlus, Block::V, Block::SMinus]),
            format!("images of V, S⁻, S⁺: {perm:?}"),
        ),
        Check::new("J_conjugates_multiplication", "m_{J(x)} = J m_x J⁻¹", conj, "all 24 basis x"),
    ]
}

fn random_line_bundle<R: Rng>(rng: &mut R) -> LineBundleClass {
    LineBundleClass::new((0..6).map(|_| int(rng.random_range(-3..=3))).collect())
}

pub fn fm_suite<R: Rng>(rng: &mut R) -> Vec<Check> {
    let mut out = verify_two_poincare_dualities();
    out.push(verify_derivative_conjugation());
    out.extend(verify_phi_p_equivariance());

    let mut merged: Vec<(Check, usize)> = Vec::new();
    let mut bundles = Vec::new();
    let rounds = 20;
    for _ in 0..rounds {
        let (f1, f2) = (random_line_bundle(rng), random_line_bundle(rng));
        bundles.push(json!([f1.c1.iter().map(|x| x.to_string()).collect::<Vec<_>>(), f2.c1.iter().map(|x| x.to_string()).collect::<Vec<_>>()]));
        for c in verify_reflection_lifts(&f1, &f2) {
            match merged.iter_mut().find(|(m, _)| m.name == c.name) {
                Some((m, count)) => {
                    if c.passed() {
                        *count += 1;
                    } else if m.passed() {
                        *m = c;
                    }
                }
                None => {
                    let count = usize::from(c.passed());
                    merged.push((c, count));
                }
            }
        }
    }
    for (mut c, count) in merged {
        let all = count == rounds;
        c.detail = if all {
            format!("{count}/{rounds} seeded line bundle pairs")
        } else {
            format!("{count}/{rounds} seeded line bundle pairs; first failure: {}", c.detail)
        };
        c.status = crate::report::Status::from_bool(all);
        out.push(c);
    }
    if let Some(c) = out.iter_mut().find(|c| c.name == "fm_two_reflections") {
        c.data = json!({ "line_bundles": bundles });
    }
    out
}

fn error_check(suite: &str, e: impl std::fmt::Display) -> Vec<Check> {
    vec![Check::new(format!("{suite}_error"), "suite completed", false, e.to_string())]
}

fn convention_check(n: u32) -> Check {
    Check::new("convention_self_test", "(s_n, s_n) = −2n", convention_self_test(n), format!("n = {n}"))
}

/// Runs one suite with its own seeded stream.
pub fn run_suite(name: &str, seed: u64, opts: &SuiteOptions) -> Option<SuiteReport> {
    let start = Instant::now();
    let mut rng = suite_rng(seed, name);
    let n = opts.n;
    let checks = match name {
        "clifford" => clifford_suite(&mut rng),
        "triality" => triality_suite(),
        "fm" => fm_suite(&mut rng),
        "stabilizer" => {
            let mut c = vec![convention_check(n)];
            c.extend(stabilizer_suite(n, opts.samples, &mut rng));
            c
        }
        "detchi" => {
            let mut c = vec![convention_check(n)];
            match det_chi_suite(n, opts.samples, &mut rng) {
                Ok(v) => c.extend(v),
                Err(e) => c.extend(error_check(name, e)),
            }
            c
        }
        "modn" => modn_suite(n, opts.samples.max(100), &mut rng),
        "gamma" => gamma_suite(&[n], &mut rng),
        "cayley" => cayley_suite(n, opts.cayley_h.as_deref(), &mut rng).unwrap_or_else(|e| error_check(name, e)),
        "weil" => weil_suite(n, opts.weil_h.as_deref(), opts.samples, &mut rng).unwrap_or_else(|e| error_check(name, e)),
        "discriminant" => discriminant_suite(n, opts.samples.clamp(10, 20), &mut rng),
        _ => return None,
    };
    let mut r = SuiteReport::new(name, seed, checks);
    r.elapsed_ms = start.elapsed().as_millis();
    Some(r)
}

/// Runs several suites on separate threads and returns them in the requested order.
pub fn run_suites(names: &[&str], seed: u64, opts: &SuiteOptions) -> Vec<SuiteReport> {
    std::thread::scope(|s| {
        let handles: Vec<_> = names.iter().map(|name| s.spawn(move || run_suite(name, seed, opts))).collect();
        handles.into_iter().filter_map(|h| h.join().ok().flatten()).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_none() {
        assert!(run_suite("nope", 0, &SuiteOptions::new(3)).is_none());
    }

    #[test]
    fn triality_suite_passes() {
        let checks = triality_suite();
        assert!(checks.iter().all(Check::passed), "{checks:?}");
        assert_eq!(checks[0].name, "J3_identity");
    }

    #[test]
    fn fm_suite_merges_rounds() {
        let checks = fm_suite(&mut suite_rng(1, "fm"));
        assert!(checks.iter().all(Check::passed), "{checks:?}");
        let n = checks.iter().filter(|c| c.name == "fm_two_line_bundles").count();
        assert_eq!(n, 1);
    }
}
