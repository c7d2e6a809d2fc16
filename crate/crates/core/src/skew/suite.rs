use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ring::CoeffRing;
use super::series::{SkewRing, SkewSeries};
use crate::error::{Error, Result};
use crate::verify::Check;

const SUITE: &str = "skew";

type Law<'a> = Box<dyn FnMut(&mut ChaCha8Rng) -> Result<bool> + 'a>;

/// Default number of random samples per law.
pub const DEFAULT_SAMPLES: usize = 100;

/// Residue degrees exercised by the suite, each with `tau` the lift of `x -> x^p`
/// (identity for `f = 1`).
pub const DEFAULT_RESIDUE_DEGREES: [usize; 3] = [1, 2, 3];

#[derive(Clone, Debug, Serialize)]
pub struct SkewRun {
    pub p: u64,
    pub k: u32,
    pub d: usize,
    pub residue_degree: usize,
    pub frobenius_power: usize,
    pub tau_order: usize,
    pub stored_coefficients: usize,
    pub defining_poly: Vec<u64>,
    pub seed: u64,
    pub samples: usize,
    pub non_units_skipped: usize,
    pub checks: Vec<Check>,
}

/// Randomised checks of the ring laws for every residue degree in `degrees`.
pub fn skew_suite(p: u64, k: u32, d: usize, seed: u64, samples: usize, degrees: &[usize]) -> Result<Vec<SkewRun>> {
    degrees
        .iter()
        .map(|&f| {
            let j = usize::from(f > 1);
            let ring = SkewRing::new(CoeffRing::build(p, k, f, j)?, d);
            run(&ring, seed.wrapping_add(f as u64), samples)
        })
        .collect()
}

fn run(ring: &Arc<SkewRing>, seed: u64, samples: usize) -> Result<SkewRun> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = ring.coeff_ring();
    let e = r.tau_order();
    let rnd = |rng: &mut ChaCha8Rng| SkewSeries::random(ring, rng);
    let cst = |c| SkewSeries::constant(ring, c);
    let x = SkewSeries::x(ring);
    let one = SkewSeries::one(ring);
    let y = x.add(&one)?;
    let mut checks = Vec::new();
    let mut tally = |name: &str, mut law: Law<'_>, rng: &mut ChaCha8Rng| -> Result<()> {
        let mut bad = 0;
        for _ in 0..samples {
            if !law(rng)? {
                bad += 1;
            }
        }
        checks.push(Check::compare(SUITE, format!("{name} ({samples} samples)"), 0, format!("{bad}")));
        Ok(())
    };

    tally(
        "associativity",
        Box::new(|rng| {
            let (a, b, c) = (rnd(rng), rnd(rng), rnd(rng));
            Ok(a.mul(&b)?.mul(&c)? == a.mul(&b.mul(&c)?)?)
        }),
        &mut rng,
    )?;
    tally(
        "delta(ab) = tau(a) delta(b) + delta(a) b",
        Box::new(|rng| {
            let (a, b) = (r.random(rng), r.random(rng));
            let rhs = r.add(&r.mul(&r.tau(&a), &r.delta(&b)), &r.mul(&r.delta(&a), &b));
            Ok(r.delta(&r.mul(&a, &b)) == rhs)
        }),
        &mut rng,
    )?;
    tally(
        "X c = tau(c) X + delta(c)",
        Box::new(|rng| {
            let c = r.random(rng);
            let rhs = cst(r.tau(&c)).mul(&x)?.add(&cst(r.delta(&c)))?;
            Ok(x.mul(&cst(c))? == rhs)
        }),
        &mut rng,
    )?;
    tally(
        "(1+X) c = tau(c) (1+X)",
        Box::new(|rng| {
            let c = r.random(rng);
            Ok(y.mul(&cst(c.clone()))? == cst(r.tau(&c)).mul(&y)?)
        }),
        &mut rng,
    )?;
    let z = (0..e).try_fold(one.clone(), |acc, _| acc.mul(&y))?;
    tally(
        "(1+X)^ord(tau) is central",
        Box::new(|rng| {
            let a = rnd(rng);
            Ok(z.mul(&a)? == a.mul(&z)?)
        }),
        &mut rng,
    )?;
    tally(
        "tau-fixed coefficients are central",
        Box::new(|rng| {
            let c = r.random(rng);
            let fixed = (1..e).fold(c.clone(), |acc, i| r.add(&acc, &r.tau_pow(&c, i)));
            let a = rnd(rng);
            Ok(r.tau(&fixed) == fixed && cst(fixed.clone()).mul(&a)? == a.mul(&cst(fixed))?)
        }),
        &mut rng,
    )?;

    let mut skipped = 0;
    let mut found = 0;
    let mut bad = 0;
    let mut attempts = 0;
    while found < samples && attempts < 50 * samples.max(1) {
        attempts += 1;
        let a = rnd(&mut rng);
        match a.inv() {
            Ok(b) => {
                found += 1;
                if a.mul(&b)? != one || b.mul(&a)? != one {
                    bad += 1;
                }
            }
            Err(Error::SkewNotAUnit) => skipped += 1,
            Err(err) => return Err(err),
        }
    }
    checks.push(Check::compare(SUITE, format!("unit inversion ({found} units)"), 0, bad));
    checks.push(Check::compare(SUITE, "units found", samples, found));
    let inv_y = y.inv()?;
    checks.push(Check::holds(
        SUITE,
        "(1+X) is invertible",
        inv_y.mul(&y)? == one && y.mul(&inv_y)? == one,
        "inverse mismatch",
    ));

    Ok(SkewRun {
        p: r.p(),
        k: r.precision(),
        d: ring.precision(),
        residue_degree: r.residue_degree(),
        frobenius_power: r.frobenius_power(),
        tau_order: e,
        stored_coefficients: ring.len(),
        defining_poly: r.defining_poly().to_vec(),
        seed,
        samples,
        non_units_skipped: skipped,
        checks,
    })
}
