//! Acceptance criteria 1 to 11, one PASS/FAIL line each.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use kummer_spin::cayley::cayley_suite;
use kummer_spin::report::{suite_rng, Check};
use kummer_spin::stabilizer::{det_chi_suite, gamma_suite, modn_suite, stabilizer_suite};
use kummer_spin::suites::{clifford_suite, fm_suite, triality_suite};
use kummer_spin::weil::{discriminant_suite, weil_suite};

const SEED: u64 = 0;

struct Outcome {
    passed: bool,
    summary: String,
}

fn require(checks: &[Check], names: &[&str]) -> Result<(), String> {
    for name in names {
        match checks.iter().find(|c| c.name == *name) {
            Some(c) if c.passed() => {}
            Some(c) => return Err(format!("{name}: {}", c.detail)),
            None => return Err(format!("{name}: missing")),
        }
    }
    Ok(())
}

fn all_pass(checks: &[Check]) -> Result<(), String> {
    match checks.iter().find(|c| c.failed()) {
        Some(c) => Err(format!("{}: {}", c.name, c.detail)),
        None => Ok(()),
    }
}

fn criterion(limit: Duration, body: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let r = body();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let (ok, text) = match r {
        Ok(t) => (true, t),
        Err(t) => (false, t),
    };
    let timing = format!("{} ms of {} s", elapsed.as_millis(), limit.as_secs());
    Outcome {
        passed: ok && in_time,
        summary: if in_time { format!("{text} ({timing})") } else { format!("{text} (too slow: {timing})") },
    }
}

fn c1_clifford() -> Outcome {
    criterion(Duration::from_secs(5), || {
        let checks = clifford_suite(&mut suite_rng(SEED, "clifford"));
        require(&checks, &["clifford_relation", "monomials_independent", "monomial_round_trip"])?;
        Ok("64 basis + 1000 random pairs, 256 independent monomials, 100 round trips".into())
    })
}

fn c2_tau_characters() -> Outcome {
    criterion(Duration::from_secs(5), || {
        let checks = clifford_suite(&mut suite_rng(SEED, "clifford"));
        require(
            &checks,
            &["tau_anti_multiplicative", "tau_on_v", "tau_degree_sign", "norm_ort_multiplicative", "rho_is_reflection"],
        )?;
        Ok("τ laws, N and ort on 200 pairs, −ρ(v) = R_v on 100 vectors".into())
    })
}

fn c3_triality() -> Outcome {
    criterion(Duration::from_secs(5), || {
        let checks = triality_suite();
        require(
            &checks,
            &["J3_identity", "J_isometry", "J_automorphism", "J_block_permutation", "J_conjugates_multiplication"],
        )?;
        Ok("J³ = id, isometry, automorphism, V → S⁺ → S⁻ → V, m_{J(x)} = J m_x J⁻¹".into())
    })
}

fn c4_fm() -> Outcome {
    criterion(Duration::from_secs(10), || {
        let checks = fm_suite(&mut suite_rng(SEED, "fm"));
        all_pass(&checks)?;
        let equivariance = checks.iter().filter(|c| c.name.starts_with("phi_p_equivariance_")).count();
        if equivariance != 8 {
            return Err(format!("{equivariance} equivariance rows"));
        }
        require(
            &checks,
            &[
                "pd_topological_pairing",
                "pd_comparison",
                "derivative_conjugation",
                "fm_two_reflections",
                "fm_conjugate_m_s_by_phi_p",
                "fm_conjugate_m_s_by_phi_f",
                "fm_two_line_bundles",
            ],
        )?;
        Ok(format!("{} rows, 20 seeded line bundle pairs", checks.len()))
    })
}

fn c5_stabilizer() -> Outcome {
    criterion(Duration::from_secs(10), || {
        let mut orders = Vec::new();
        for n in [3u32, 4, 5] {
            let mut rng = suite_rng(SEED, "stabilizer");
            all_pass(&stabilizer_suite(n, 50, &mut rng)).map_err(|e| format!("n = {n}: {e}"))?;
            let checks = det_chi_suite(n, 50, &mut suite_rng(SEED, "detchi")).map_err(|e| e.to_string())?;
            require(&checks, &["stabilizer_elements_fix_s_n", "det_chi", "reflection_characters", "discriminant_order"])
                .map_err(|e| format!("n = {n}: {e}"))?;
            let d = &checks.iter().find(|c| c.name == "discriminant_order").unwrap().data;
            orders.push(format!(
                "n={n}: order {} (2n {}, 4n−2 {})",
                d["order"].as_str().unwrap_or("?"),
                d["matches_2n"],
                d["matches_4n_minus_2"]
            ));
        }
        Ok(format!("det·χ = +1 and s_n fixed for n = 3, 4, 5; {}", orders.join("; ")))
    })
}

fn c6_modn() -> Outcome {
    criterion(Duration::from_secs(5), || {
        let checks = modn_suite(4, 100, &mut suite_rng(SEED, "modn"));
        require(&checks, &["modn_homomorphism", "modn_invariance", "modn_sl4_literal"])?;
        Ok("100 pairs, n = 4".into())
    })
}

fn c7_gamma() -> Outcome {
    criterion(Duration::from_secs(2), || {
        let ns: Vec<u32> = (2..=8).collect();
        let checks = gamma_suite(&ns, &mut suite_rng(SEED, "gamma"));
        if checks.len() != ns.len() {
            return Err(format!("{} rows for {} values of n", checks.len(), ns.len()));
        }
        all_pass(&checks)?;
        Ok("SNF (1⁴, n⁴) and m_w†m_w = −n for n = 2..8".into())
    })
}

fn c8_cayley() -> Outcome {
    criterion(Duration::from_secs(30), || {
        let checks = cayley_suite(3, None, &mut suite_rng(SEED, "cayley")).map_err(|e| e.to_string())?;
        require(&checks, &["cayley_equals_c2end", "invariant_rank", "invariant_rank_w_h"])?;
        let w = &checks.iter().find(|c| c.name == "invariant_rank").unwrap().data;
        let wh = &checks.iter().find(|c| c.name == "invariant_rank_w_h").unwrap().data;
        if w["invariant_rank"] != 1 || wh["invariant_rank"] != 3 {
            return Err(format!("ranks {} and {}", w["invariant_rank"], wh["invariant_rank"]));
        }
        let gens = w["generators"].as_u64().unwrap_or(0);
        if gens < 20 {
            return Err(format!("only {gens} generators"));
        }
        Ok(format!("c2_end = cayley_class for n = 2..8; rank 1 with {gens} generators, rank 3 with h"))
    })
}

fn c9_weil() -> Outcome {
    criterion(Duration::from_secs(10), || {
        let checks = weil_suite(4, None, 50, &mut suite_rng(SEED, "weil")).map_err(|e| e.to_string())?;
        require(
            &checks,
            &["theta_prime_square_sampled", "weil_multiplication", "kahler_definite", "j_anticommute", "metrics_coincide"],
        )?;
        Ok("50 (w,h), 20 λ, 10 metrics, 10 anticommuting frames".into())
    })
}

fn c10_discriminant() -> Outcome {
    criterion(Duration::from_secs(30), || {
        let checks = discriminant_suite(6, 12, &mut suite_rng(SEED, "discriminant"));
        require(&checks, &["trivial_discriminant"])?;
        let found = checks[0].data["witnesses"].as_array().map_or(0, Vec::len);
        if found < 10 {
            return Err(format!("only {found} witnesses"));
        }
        Ok(format!("{found} H-orthogonal bases with det Ψ a rational square"))
    })
}

fn run_cli() -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_kummer-spin"))
        .args(["verify", "all", "--n", "4", "--seed", "7", "--format", "json"])
        .env_remove("KUMMER_SPIN_SEED")
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn c11_cli() -> Outcome {
    criterion(Duration::from_secs(120), || {
        let (a, code_a) = run_cli()?;
        let (b, code_b) = run_cli()?;
        if a != b {
            return Err("outputs differ".into());
        }
        if code_a != 0 || code_b != 0 {
            return Err(format!("exit codes {code_a}, {code_b}"));
        }
        Ok(format!("{} identical bytes, exit 0 twice", a.len()))
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("clifford foundation", c1_clifford),
        ("tau, alpha and characters", c2_tau_characters),
        ("triality", c3_triality),
        ("Fourier-Mukai identities", c4_fm),
        ("stabilizer and monodromy characters", c5_stabilizer),
        ("mod-n representation", c6_modn),
        ("Gamma_w", c7_gamma),
        ("Cayley class", c8_cayley),
        ("Weil structures", c9_weil),
        ("trivial discriminant", c10_discriminant),
        ("CLI determinism", c11_cli),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        failed += usize::from(!o.passed);
        println!("criterion {:>2} {:<38} {}  {}", i + 1, name, if o.passed { "PASS" } else { "FAIL" }, o.summary);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
