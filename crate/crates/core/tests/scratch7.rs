// temporary probe: criterion-1 instance 14
use num_complex::Complex64;
use orthophase::funcspace::{PiecewiseFn, Problem};
use orthophase::solver::{solve_complex, SolveConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rand_constant_cells(rng: &mut ChaCha8Rng, real: bool) -> PiecewiseFn {
    let cells = 1 + (rng.gen::<u32>() % 4) as usize;
    let mut bp = vec![0.0, 1.0];
    for _ in 0..cells - 1 {
        bp.push(rng.gen::<f64>());
    }
    bp.sort_by(|a: &f64, b| a.partial_cmp(b).unwrap());
    bp.dedup();
    let vals: Vec<Complex64> = (0..bp.len() - 1)
        .map(|_| {
            c(
                rng.gen::<f64>() * 2.0 - 1.0,
                if real { 0.0 } else { rng.gen::<f64>() * 2.0 - 1.0 },
            )
        })
        .collect();
    PiecewiseFn::constant_cells(bp, vals).unwrap()
}

#[test]
fn probe_instance14() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    for inst in 0..20usize {
        let n = 1 + inst % 3;
        let problem =
            Problem::new((0..n).map(|_| rand_constant_cells(&mut rng, false)).collect(), false)
                .unwrap();
        if inst != 14 {
            continue;
        }
        println!("instance 14 functions:");
        for f in problem.functions() {
            println!("  bp={:?} vals={:?}", f.breakpoints(), f.values());
        }
        for seed in [0u64, 1, 2, 3] {
            let cfg = SolveConfig { seed, ..Default::default() };
            let t0 = std::time::Instant::now();
            let r = solve_complex(&problem, &cfg).unwrap();
            println!(
                "seed {seed}: conv={} res={:.3e} w11={:.3} evals={} {:?}",
                r.converged, r.residual_norm, r.w11, r.evaluations, t0.elapsed()
            );
        }
    }
}
