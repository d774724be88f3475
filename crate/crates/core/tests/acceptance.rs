//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pph_core::decide::{decide_dpph_with, decide_pph_with, Route, Verdict};
use pph_core::oracle::{oracle_decide, plant_instance, random_genotypes, DEFAULT_CAP};
use pph_core::{
    append_all_zero, build_all_resolution_graphs, build_tree, construct_haplotypes_dpph,
    construct_haplotypes_pph, decide_dpph, decide_pph, explains_matrix, four_gamete_check,
    pph_to_dpph, three_gamete_check, verify_tree, Edge, GenotypeMatrix, HaplotypeMatrix,
    ResolutionGraph, ResolutionKind, Witness,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Report {
    failures: usize,
}

impl Report {
    fn record(&mut self, name: &str, outcome: Result<String, String>) {
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                self.failures += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
}

/// Every genotype matrix with 1..=3 rows and 1..=3 columns.
fn sweep() -> Vec<GenotypeMatrix> {
    let mut out = Vec::new();
    for rows in 1..=3usize {
        for cols in 1..=3usize {
            let cells = rows * cols;
            for code in 0..3usize.pow(cells as u32) {
                let mut c = code;
                let grid: Vec<Vec<u8>> = (0..rows)
                    .map(|_| {
                        (0..cols)
                            .map(|_| {
                                let v = (c % 3) as u8;
                                c /= 3;
                                v
                            })
                            .collect()
                    })
                    .collect();
                out.push(GenotypeMatrix::from_rows(&grid).unwrap());
            }
        }
    }
    out
}

fn random_4x5(count: usize) -> Vec<GenotypeMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4005);
    (0..count)
        .map(|_| {
            let p = rng.gen_range(0.1..0.7);
            random_genotypes(&mut rng, 4, 5, p)
        })
        .collect()
}

fn show(a: &GenotypeMatrix) -> String {
    a.to_string().trim_end().replace('\n', ";")
}

fn oracle_equivalence(
    sweep: &[GenotypeMatrix],
    random: &[GenotypeMatrix],
) -> Result<String, String> {
    let start = Instant::now();
    let mut checked = 0;
    for a in sweep {
        check_oracle(a)?;
        checked += 1;
    }
    let sweep_time = start.elapsed();
    if sweep_time > Duration::from_secs(60) {
        return Err(format!("sweep took {sweep_time:?}, limit 60s"));
    }
    for a in random {
        check_oracle(a)?;
    }
    Ok(format!(
        "{checked} sweep instances in {:.2?}, {} random 4x5 instances, 0 disagreements",
        sweep_time,
        random.len()
    ))
}

fn check_oracle(a: &GenotypeMatrix) -> Result<(), String> {
    for directed in [false, true] {
        let verdict = if directed {
            decide_dpph(a)
        } else {
            decide_pph(a)
        };
        let oracle = oracle_decide(a, directed, DEFAULT_CAP).map_err(|e| e.to_string())?;
        if verdict.admits() != oracle {
            return Err(format!(
                "{} directed={directed}: pipeline {} oracle {}",
                show(a),
                verdict,
                oracle
            ));
        }
    }
    Ok(())
}

fn check_solution(a: &GenotypeMatrix, b: &HaplotypeMatrix, directed: bool) -> Result<(), String> {
    let tag = || format!("{} directed={directed}", show(a));
    if !explains_matrix(b, a).map_err(|e| e.to_string())? {
        return Err(format!("{}: output does not explain input", tag()));
    }
    let gametes = if directed {
        three_gamete_check(b)
    } else {
        four_gamete_check(b)
    };
    gametes.map_err(|v| format!("{}: gamete violation {v}", tag()))?;
    let tree = build_tree(b, directed).map_err(|e| format!("{}: {e}", tag()))?;
    verify_tree(b, &tree).map_err(|e| format!("{}: {e}", tag()))
}

fn constructive_soundness(instances: &[GenotypeMatrix]) -> Result<String, String> {
    let mut accepted = 0;
    for a in instances {
        for directed in [false, true] {
            let verdict = if directed {
                decide_dpph(a)
            } else {
                decide_pph(a)
            };
            if !verdict.admits() {
                continue;
            }
            let b = if directed {
                construct_haplotypes_dpph(a)
            } else {
                construct_haplotypes_pph(a)
            }
            .map_err(|e| format!("{} directed={directed}: {e}", show(a)))?;
            check_solution(a, &b, directed)?;
            accepted += 1;
        }
    }
    Ok(format!(
        "{accepted} accepted (instance, mode) pairs solved and verified"
    ))
}

fn routes_agree(a: &GenotypeMatrix) -> Result<(), String> {
    for directed in [false, true] {
        let decide = |route| {
            if directed {
                decide_dpph_with(a, route)
            } else {
                decide_pph_with(a, route)
            }
        };
        let parity = decide(Route::Parity);
        let bipartite = decide(Route::Bipartite);
        if parity.admits() != bipartite.admits() {
            return Err(format!(
                "{} directed={directed}: parity {parity}, bipartite {bipartite}",
                show(a)
            ));
        }
    }
    Ok(())
}

fn route_agreement(sweep: &[GenotypeMatrix], random: &[GenotypeMatrix]) -> Result<String, String> {
    for a in sweep.iter().chain(random) {
        routes_agree(a)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x200);
    let mut largest = 0;
    let mut perturbed_rejects = 0;
    for seed in 0..1000u64 {
        let n = rng.gen_range(1..=200);
        let m = rng.gen_range(1..=200);
        largest = largest.max(n * m);
        let (a, _) = plant_instance(seed, n, m);
        for directed in [false, true] {
            for route in [Route::Parity, Route::Bipartite] {
                let v = if directed {
                    decide_dpph_with(&a, route)
                } else {
                    decide_pph_with(&a, route)
                };
                if !v.admits() && !directed {
                    return Err(format!(
                        "planted seed {seed} ({n}x{m}) rejected by {route}: {v}"
                    ));
                }
            }
        }
        routes_agree(&a)?;
        // A few entries turned into 2s usually break the instance.
        let mut rows: Vec<Vec<u8>> = (0..a.rows()).map(|r| a.row(r).to_vec()).collect();
        for _ in 0..rng.gen_range(1..=4) {
            let r = rng.gen_range(0..n);
            let c = rng.gen_range(0..m);
            rows[r][c] = 2;
        }
        let b = GenotypeMatrix::from_rows(&rows).unwrap();
        if !decide_pph(&b).admits() {
            perturbed_rejects += 1;
        }
        routes_agree(&b)?;
    }
    Ok(format!(
        "{} sweep + {} random + 1000 planted (largest {largest} cells) + 1000 perturbed ({perturbed_rejects} rejecting), 0 disagreements",
        sweep.len(),
        random.len()
    ))
}

fn reduction_consistency(sweep: &[GenotypeMatrix]) -> Result<String, String> {
    for a in sweep {
        let directed = decide_dpph(a).admits();
        let via_zero = decide_pph(&append_all_zero(a)).admits();
        if directed != via_zero {
            return Err(format!("{}: dpph {directed}, pph(A+0) {via_zero}", show(a)));
        }
        let undirected = decide_pph(a).admits();
        let via_flip = decide_dpph(&pph_to_dpph(a).0).admits();
        if undirected != via_flip {
            return Err(format!(
                "{}: pph {undirected}, dpph(flip A) {via_flip}",
                show(a)
            ));
        }
    }
    Ok(format!(
        "{} instances, both reductions, 0 disagreements",
        sweep.len()
    ))
}

fn worked_example() -> Result<String, String> {
    let a = GenotypeMatrix::parse("220\n202\n022\n").unwrap();
    let graphs = build_all_resolution_graphs(&a);
    let unequal = |x, y| Edge::new(x, y, ResolutionKind::Unequal);
    let expected = vec![
        ResolutionGraph::from_parts(0, vec![0, 1, 2], vec![unequal(0, 1), unequal(0, 2)]),
        ResolutionGraph::from_parts(1, vec![1, 2], vec![unequal(1, 2)]),
        ResolutionGraph::empty(2),
    ];
    if graphs != expected {
        return Err(format!("graphs {graphs:?}"));
    }
    if decide_dpph(&a) != Verdict::Admits {
        return Err("verdict is not YES".into());
    }
    let b = construct_haplotypes_dpph(&a).map_err(|e| e.to_string())?;
    if b.to_string() != "010\n100\n001\n100\n001\n010\n" {
        return Err(format!("haplotypes {}", show_h(&b)));
    }
    check_solution(&a, &b, true)?;
    Ok("G1={(1,2,w1),(1,3,w1)}, G2={(2,3,w1)}, G3 empty, YES, 010;100;001;100;001;010".into())
}

fn show_h(b: &HaplotypeMatrix) -> String {
    b.to_string().trim_end().replace('\n', ";")
}

fn scale() -> Result<String, String> {
    let mut worst = Duration::ZERO;
    for seed in 0..3u64 {
        let (a, _) = plant_instance(seed, 500, 500);
        for directed in [false, true] {
            let start = Instant::now();
            let verdict = if directed {
                decide_dpph(&a)
            } else {
                decide_pph(&a)
            };
            if !verdict.admits() {
                // A planted instance only needs to admit the undirected problem.
                if directed {
                    continue;
                }
                return Err(format!("seed {seed}: planted instance rejected: {verdict}"));
            }
            let b = if directed {
                construct_haplotypes_dpph(&a)
            } else {
                construct_haplotypes_pph(&a)
            }
            .map_err(|e| e.to_string())?;
            check_solution(&a, &b, directed)?;
            let took = start.elapsed();
            worst = worst.max(took);
            if took > Duration::from_secs(5) {
                return Err(format!(
                    "seed {seed} directed={directed} took {took:?}, limit 5s"
                ));
            }
        }
    }
    Ok(format!(
        "3 planted 500x500 instances, worst decide+solve+verify {worst:.2?}"
    ))
}

fn check_witness(a: &GenotypeMatrix, directed: bool, verdict: &Verdict) -> Result<(), String> {
    let Some(witness) = verdict.witness() else {
        return Ok(());
    };
    // Undirected witnesses refer to the column-flipped directed instance.
    let instance = if directed {
        a.clone()
    } else {
        pph_to_dpph(a).0
    };
    let ok = witness.validate(&instance)
        && match witness {
            Witness::OddCycle(cycle) => cycle.weight() % 2 == 1,
            Witness::GametePair(_) => true,
        };
    if ok {
        Ok(())
    } else {
        Err(format!(
            "{} directed={directed}: invalid witness {witness}",
            show(a)
        ))
    }
}

fn witness_validity() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7);
    let mut rejecting = 0;
    let mut cycles = 0;
    let mut attempts = 0u64;
    while rejecting < 10_000 {
        attempts += 1;
        if attempts > 1_000_000 {
            return Err(format!("only {rejecting} rejecting instances found"));
        }
        let rows = rng.gen_range(2..=8);
        let cols = rng.gen_range(2..=8);
        let p = rng.gen_range(0.2..0.8);
        let a = random_genotypes(&mut rng, rows, cols, p);
        let directed = rng.gen_bool(0.5);
        let mut counted = false;
        for route in [Route::Parity, Route::Bipartite] {
            let verdict = if directed {
                decide_dpph_with(&a, route)
            } else {
                decide_pph_with(&a, route)
            };
            if verdict.admits() {
                continue;
            }
            check_witness(&a, directed, &verdict)?;
            if !counted {
                counted = true;
                rejecting += 1;
                if matches!(verdict.witness(), Some(Witness::OddCycle(_))) {
                    cycles += 1;
                }
            }
        }
    }
    Ok(format!(
        "{rejecting} rejecting instances ({cycles} odd-cycle witnesses), both routes re-validated"
    ))
}

fn main() -> ExitCode {
    let mut report = Report { failures: 0 };
    let sweep = sweep();
    let random = random_4x5(10_000);

    report.record("1 oracle equivalence", oracle_equivalence(&sweep, &random));
    let mut soundness_set = sweep.clone();
    soundness_set.extend(random.iter().cloned());
    report.record(
        "2 constructive soundness",
        constructive_soundness(&soundness_set),
    );
    report.record("3 route agreement", route_agreement(&sweep, &random));
    report.record("4 reduction consistency", reduction_consistency(&sweep));
    report.record("5 worked example", worked_example());
    report.record("6 scale 500x500", scale());
    report.record("7 witness validity", witness_validity());

    if report.failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", report.failures);
        ExitCode::FAILURE
    }
}
