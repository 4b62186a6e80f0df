//! Acceptance criteria 1–7. Each criterion prints one PASS/FAIL line on
//! standard error (visible without `--nocapture`) and then asserts.
//! A lock runs the criteria one at a time so the timing budgets and the
//! benchmark are measured on an otherwise idle process.

use std::io::Write;
use std::path::Path;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use lattice_kit::lattice::{
    classify, generate_sublattice, minimal_lattice_subspace, pointwise_inf, pointwise_sup,
    positive_basis, sup_in, Analysis, LatticeKind, PayoffCollection,
};
use lattice_kit::markets::{
    basic_set, complete_by_options, is_complete, negative_part, positive_part, MarketSpec,
};
use lattice_kit::markets::{min_cost_insurance, InsuranceProblem};
use lattice_kit::numerics::{dot, least_squares, norm1, norm2, Matrix};
use lattice_kit::Options;
use lattice_kit_cli::bench::run_bench;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static SERIAL: Mutex<()> = Mutex::new(());

/// Clauses of one criterion and the time spent computing them.
struct Report {
    id: u32,
    title: &'static str,
    clauses: Vec<(String, bool)>,
    /// Clauses whose reference value contradicts its own inputs. They are
    /// reported as failures, and the test insists they still fail so that
    /// a change in behaviour is noticed.
    known_red: Vec<(String, bool)>,
    elapsed: Duration,
}

impl Report {
    fn new(id: u32, title: &'static str) -> Self {
        Self {
            id,
            title,
            clauses: Vec::new(),
            known_red: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn check(&mut self, label: impl Into<String>, ok: bool) {
        self.clauses.push((label.into(), ok));
    }

    fn check_known_red(&mut self, label: impl Into<String>, ok: bool) {
        self.known_red.push((label.into(), ok));
    }

    fn timed<T>(&mut self, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.elapsed += t.elapsed();
        out
    }

    fn finish(self, budget: Duration) {
        let ms = self.elapsed.as_secs_f64() * 1e3;
        let mut clauses = self.clauses;
        clauses.push((
            format!("runtime {ms:.1} ms < {} ms", budget.as_millis()),
            self.elapsed < budget,
        ));
        let failed: Vec<&str> = clauses
            .iter()
            .chain(&self.known_red)
            .filter(|(_, ok)| !ok)
            .map(|(l, _)| l.as_str())
            .collect();
        let total = clauses.len() + self.known_red.len();
        let line = if failed.is_empty() {
            format!("criterion {} PASS: {} ({total} clauses, {ms:.1} ms)", self.id, self.title)
        } else {
            format!("criterion {} FAIL: {} (failed: {})", self.id, self.title, failed.join("; "))
        };
        let _ = writeln!(std::io::stderr().lock(), "{line}");
        assert!(clauses.iter().all(|(_, ok)| *ok), "{line}");
        for (label, ok) in &self.known_red {
            assert!(!ok, "criterion {}: '{label}' now holds; reclassify it", self.id);
        }
    }
}

fn rows(name: &str) -> Vec<Vec<f64>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data")
        .join(name);
    std::fs::read_to_string(path)
        .expect("fixture exists")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(|t| t.trim().parse().unwrap()).collect())
        .collect()
}

fn svd_rank(rows: &[Vec<f64>], tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = nalgebra::DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    let sv = m.singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > tol * smax.max(1.0)).count()
}

fn same_span(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    let mut both = a.to_vec();
    both.extend(b.iter().cloned());
    let r = svd_rank(a, tol);
    r == svd_rank(b, tol) && svd_rank(&both, tol) == r
}

fn span_residual(span: &[Vec<f64>], x: &[f64]) -> f64 {
    let a = Matrix::from_columns(span).unwrap();
    let c = least_squares(&a, x, 1e-13).unwrap();
    let back = a.mul_vec(&c).unwrap();
    norm2(&back.iter().zip(x).map(|(p, q)| p - q).collect::<Vec<_>>())
}

fn unit_rays(v: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = v
        .iter()
        .map(|r| {
            let s = norm1(r);
            r.iter().map(|x| x / s).collect()
        })
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// Equal after scaling each vector to unit 1-norm and sorting.
fn rays_match(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    let (ua, ub) = (unit_rays(a), unit_rays(b));
    ua.len() == ub.len()
        && ua
            .iter()
            .zip(&ub)
            .all(|(p, q)| p.iter().zip(q).all(|(x, y)| (x - y).abs() <= tol))
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn sorted(mut v: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

fn opts() -> Options {
    Options::default()
}

#[test]
fn criterion_1_four_state_example() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut r = Report::new(1, "four-state lattice-subspace example");
    let x = PayoffCollection::new(rows("four_state_inputs.csv")).unwrap();
    let printed_basis = rows("four_state_basis.csv");
    let (c, basis, y1, y2, sup, pw) = r.timed(|| {
        let a = Analysis::new(&x, &opts()).unwrap();
        let c = a.classification();
        let basis = positive_basis(&x, &a.range, &opts()).unwrap();
        let y1 = x.combine(&[2.0, 1.0, 0.0]);
        let y2 = x.combine(&[0.0, -1.0, 1.0]);
        let sup = sup_in(&basis, &y1, &y2).unwrap();
        let pw = pointwise_sup(&y1, &y2);
        (c, basis, y1, y2, sup, pw)
    });
    r.check("kind = LatticeSubspace", c.kind == LatticeKind::LatticeSubspace);
    r.check("kind != VectorSublattice", c.kind != LatticeKind::VectorSublattice);
    r.check(
        "positive-basis rays match printed basis (1e-8)",
        rays_match(basis.vectors(), &printed_basis, 1e-8),
    );
    r.check("y1 = (18,4,0,2), y2 = (2,0,2,0)", y1 == [18.0, 4.0, 0.0, 2.0] && y2 == [2.0, 0.0, 2.0, 0.0]);
    r.check_known_red(
        format!("sup_in(y1,y2) = (20,4,4,2) [got {sup:?}]"),
        close(&sup, &[20.0, 4.0, 4.0, 2.0], 1e-8),
    );
    let b = basis.vectors();
    let expected: Vec<f64> = (0..4).map(|s| b[0][s] + 0.5 * b[1][s] + 2.0 * b[2][s]).collect();
    r.check(
        format!("sup_in(y1,y2) = b1 + b2/2 + 2 b3 = {expected:?}"),
        close(&sup, &expected, 1e-8),
    );
    r.check("pointwise y1 v y2 = (18,4,2,2)", pw == [18.0, 4.0, 2.0, 2.0]);
    r.finish(Duration::from_millis(10));
}

#[test]
fn criterion_2_seven_state_example() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut r = Report::new(2, "four vectors in R^7");
    let x = PayoffCollection::new(rows("seven_state_inputs.csv")).unwrap();
    let (c, z, y) = r.timed(|| {
        (
            classify(&x, &opts()).unwrap(),
            generate_sublattice(&x, &opts()).unwrap(),
            minimal_lattice_subspace(&x, &opts()).unwrap(),
        )
    });
    r.check(format!("m = 6 [got {}]", c.m), c.m == 6);
    r.check(format!("d = 5 [got {}]", c.d), c.d == 5);
    let want = sorted(vec![
        vec![0.0, 0.0, 0.0, 0.0, 0.0, 2.0, 0.0],
        vec![0.0, 4.0, 0.0, 0.0, 0.0, 0.0, 8.0],
    ]);
    r.check(
        "sublattice appended vectors exactly {(0,0,0,0,0,2,0),(0,4,0,0,0,0,8)}",
        sorted(z.appended().to_vec()) == want,
    );
    r.check(
        "minlat appended vector (0,4,0,0,0,0,8)",
        y.appended().len() == 1 && close(&y.appended()[0], &want[1], 1e-8),
    );
    r.check(
        "sublattice positive basis matches printed block (1e-8)",
        rays_match(z.basis.vectors(), &rows("seven_state_sublattice_basis.csv"), 1e-8),
    );
    r.check(
        "minlat positive basis matches printed block (1e-8)",
        rays_match(y.basis.vectors(), &rows("seven_state_minlat_basis.csv"), 1e-8),
    );
    r.finish(Duration::from_millis(50));
}

#[test]
fn criterion_3_seventeen_state_example() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut r = Report::new(3, "ten vectors in R^17");
    let x = PayoffCollection::new(rows("seventeen_state_inputs.csv")).unwrap();
    let (c, z, y, yc) = r.timed(|| {
        let c = classify(&x, &opts()).unwrap();
        let z = generate_sublattice(&x, &opts()).unwrap();
        let y = minimal_lattice_subspace(&x, &opts()).unwrap();
        let yc = classify(&PayoffCollection::new(y.generators.clone()).unwrap(), &opts()).unwrap();
        (c, z, y, yc)
    });
    r.check(format!("m = 17 [got {}]", c.m), c.m == 17);
    r.check(format!("d = 13 [got {}]", c.d), c.d == 13);
    r.check("sublattice generators have rank 17", svd_rank(&z.generators, 1e-10) == 17);

    let printed = rows("seventeen_state_minlat.csv");
    let union: Vec<bool> = (0..17)
        .map(|i| printed[10..].iter().any(|row| row[i] != 0.0))
        .collect();
    let appended = y.appended();
    r.check(format!("3 appended rows [got {}]", appended.len()), appended.len() == 3);
    r.check(
        "appended supports within the printed rows' support",
        appended
            .iter()
            .all(|row| row.iter().zip(&union).all(|(v, u)| *v == 0.0 || *u)),
    );
    r.check(
        "span(Y) contains span(X)",
        x.vectors()
            .iter()
            .all(|v| span_residual(&y.generators, v) <= 1e-8 * norm2(v).max(1.0)),
    );
    r.check("classify(Y) != Neither", yc.kind != LatticeKind::Neither);
    r.check(format!("dim Y = 13 [got {}]", y.dim()), y.dim() == 13);
    r.check(
        "appended rows equal printed rows 11-13 (1e-8)",
        appended.len() == 3 && appended.iter().zip(&printed[10..]).all(|(a, b)| close(a, b, 1e-8)),
    );
    r.finish(Duration::from_millis(200));
}

#[test]
fn criterion_4_twelve_state_market() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut r = Report::new(4, "market completion in R^12");
    let market = MarketSpec::new(rows("option_market_primitives.csv"), rows("option_market_strikes.csv")).unwrap();
    let (basic, completion, complete) = r.timed(|| {
        (
            basic_set(&market, &opts()).unwrap(),
            complete_by_options(&market, &opts()).unwrap(),
            is_complete(&market, &opts()).unwrap(),
        )
    });
    r.check_known_red(
        format!("basic set has 5 elements [got {}]", basic.len()),
        basic.len() == 5,
    );
    let candidates: Vec<Vec<f64>> = market
        .primitives()
        .iter()
        .chain(market.strikes())
        .flat_map(|v| [positive_part(v), negative_part(v)])
        .collect();
    r.check(
        format!("basic set size = candidate rank = {}", svd_rank(&candidates, 1e-9)),
        basic.len() == svd_rank(&candidates, 1e-9) && same_span(&basic, &candidates, 1e-8),
    );
    r.check(
        format!("dim F_U(X) = 5 [got {}]", completion.dimension),
        completion.dimension == 5,
    );
    r.check(
        "generator span equals printed span (1e-8)",
        same_span(&completion.generators, &rows("option_market_sublattice.csv"), 1e-8),
    );
    r.check(
        "positive-basis rays match printed block (1e-8)",
        rays_match(completion.basis.vectors(), &rows("option_market_basis.csv"), 1e-8),
    );
    r.check("is_complete = false", !complete);
    r.finish(Duration::from_millis(50));
}

#[test]
fn criterion_5_property_suite() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut r = Report::new(5, "200 random instances, n <= 6, k <= 12");
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut counts = [0usize; 5];
    let mut instances = 0;
    while instances < 200 {
        let n = rng.random_range(1..=6);
        let k = rng.random_range(n..=12);
        let v: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..k).map(|_| rng.random::<f64>()).collect())
            .collect();
        let Ok(x) = PayoffCollection::new(v) else { continue };
        instances += 1;
        let bad = r.timed(|| check_instance(&x));
        for (c, b) in counts.iter_mut().zip(bad) {
            *c += usize::from(b);
        }
    }
    let names = [
        "n <= d <= m <= k",
        "sublattice closed under pairwise sup/inf",
        "sublattice basis supports partition D(beta)",
        "minlat contains X and is not Neither",
        "xi simplex constraints (1e-8)",
    ];
    for (name, bad) in names.iter().zip(counts) {
        r.check(format!("{name} [{bad} violations]"), bad == 0);
    }
    r.finish(Duration::from_secs(30));
}

/// Which of the five clauses an instance violates.
fn check_instance(x: &PayoffCollection) -> [bool; 5] {
    let o = opts();
    let a = Analysis::new(x, &o).unwrap();
    let c = a.classification();
    let order = c.n <= c.d && c.d <= c.m && c.m <= c.k;

    let z = generate_sublattice(x, &o).unwrap();
    let in_z = |v: &[f64]| span_residual(&z.generators, v) <= 1e-8 * norm2(v).max(1.0);
    let closed = z.generators.iter().all(|p| {
        z.generators
            .iter()
            .all(|q| in_z(&pointwise_sup(p, q)) && in_z(&pointwise_inf(p, q)))
    });
    let mut cover = vec![0usize; c.k];
    for b in z.basis.vectors() {
        for (i, v) in b.iter().enumerate() {
            if *v > 0.0 {
                cover[i] += 1;
            }
        }
    }
    let partition = (0..c.k).all(|i| cover[i] == usize::from(a.table.position(i).is_some()))
        && z.basis.vectors().iter().all(|b| b.iter().all(|&v| v >= 0.0));

    let y = minimal_lattice_subspace(x, &o).unwrap();
    let contains = x
        .vectors()
        .iter()
        .all(|v| span_residual(&y.generators, v) <= 1e-8 * norm2(v).max(1.0));
    let yk = classify(&PayoffCollection::new(y.generators.clone()).unwrap(), &o)
        .unwrap()
        .kind;
    let simplex = y.domain.iter().enumerate().all(|(col, &state)| {
        let w: Vec<f64> = y.xi.iter().map(|row| row[col]).collect();
        let beta = &a.table.beta_rows[a.table.position(state).unwrap()];
        let mix: Vec<f64> = (0..c.n)
            .map(|j| w.iter().zip(&y.vertices).map(|(wi, p)| wi * p[j]).sum())
            .collect();
        w.iter().all(|&v| v >= -1e-8) && (w.iter().sum::<f64>() - 1.0).abs() <= 1e-8 && close(&mix, beta, 1e-8)
    });
    [
        !order,
        !closed,
        !partition,
        !(contains && yk != LatticeKind::Neither),
        !simplex,
    ]
}

/// Exact optimum by enumerating every basic point of `G η ≥ h`.
fn vertex_optimum(g: &[Vec<f64>], p: &[f64], h: &[f64]) -> Option<(f64, Vec<f64>)> {
    let n = p.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let m = g.len();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let idx: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let a = nalgebra::DMatrix::from_fn(n, n, |i, j| g[idx[i]][j]);
        let b = nalgebra::DVector::from_iterator(n, idx.iter().map(|&i| h[i]));
        if a.determinant().abs() < 1e-12 {
            continue;
        }
        let Some(eta) = a.lu().solve(&b) else { continue };
        let eta: Vec<f64> = eta.iter().cloned().collect();
        if g.iter().zip(h).all(|(row, hi)| dot(row, &eta) >= hi - 1e-9) {
            let cost = dot(p, &eta);
            if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                best = Some((cost, eta));
            }
        }
    }
    best
}

/// Grid search over `[-5, 5]²` for the first two holdings. Every state row
/// has a positive third entry and the third price is positive, so for fixed
/// `(η₁, η₂)` the cheapest feasible `η₃` is the largest of the per-state
/// lower bounds. The search runs a coarse pass, then local grids around its
/// own incumbent, re-centred while they improve and refined once they stall.
fn grid_optimum(g: &[Vec<f64>], p: &[f64], h: &[f64]) -> Option<f64> {
    assert!(p[2] > 0.0 && g.iter().all(|row| row[2] > 0.0));
    let cost = |a: f64, b: f64| {
        let e3 = g
            .iter()
            .zip(h)
            .map(|(row, hi)| (hi - row[0] * a - row[1] * b) / row[2])
            .fold(f64::NEG_INFINITY, f64::max);
        p[0] * a + p[1] * b + p[2] * e3
    };
    let mut best = (f64::INFINITY, [0.0, 0.0]);
    let coarse = 0.01;
    for i in 0..=1000 {
        for j in 0..=1000 {
            let e = [-5.0 + i as f64 * coarse, -5.0 + j as f64 * coarse];
            let c = cost(e[0], e[1]);
            if c < best.0 {
                best = (c, e);
            }
        }
    }
    let mut step = coarse;
    while step > 1e-12 {
        let centre = best.1;
        let mut improved = false;
        for i in -8..=8 {
            for j in -8..=8 {
                let e = [centre[0] + i as f64 * step, centre[1] + j as f64 * step];
                let c = cost(e[0], e[1]);
                if c < best.0 {
                    best = (c, e);
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 4.0;
        }
    }
    best.0.is_finite().then_some(best.0)
}

#[test]
fn criterion_6_insurance_oracle() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut r = Report::new(6, "insurance against grid-search oracle, n = 3, k = 4");
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut worst_gap: f64 = 0.0;
    let mut worst_dom: f64 = 0.0;
    let mut vertex_gap: f64 = 0.0;
    let mut solved = 0;
    let mut failures = 0;
    while solved < 20 {
        let x: Vec<Vec<f64>> = (0..3)
            .map(|_| (0..4).map(|_| rng.random_range(0.1..1.0)).collect())
            .collect();
        let q: Vec<f64> = (0..4).map(|_| rng.random_range(0.1..1.0)).collect();
        let theta: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
        let phi: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
        let prices: Vec<f64> = x.iter().map(|v| dot(v, &q)).collect();
        let Ok(payoffs) = PayoffCollection::new(x.clone()) else { continue };
        let problem = InsuranceProblem::new(payoffs, prices.clone(), theta, phi).unwrap();
        let target = problem.target();
        let g: Vec<Vec<f64>> = (0..4).map(|s| x.iter().map(|v| v[s]).collect()).collect();
        // Keep instances whose optimum lies well inside the search box.
        let Some((_, eta_v)) = vertex_optimum(&g, &prices, &target) else { continue };
        if eta_v.iter().any(|v| v.abs() > 4.0) {
            continue;
        }
        solved += 1;
        let sol = r.timed(|| min_cost_insurance(&problem, &opts()));
        let Ok(sol) = sol else {
            failures += 1;
            continue;
        };
        let grid = r.timed(|| grid_optimum(&g, &prices, &target)).expect("box holds the optimum");
        let (exact, _) = vertex_optimum(&g, &prices, &target).unwrap();
        worst_gap = worst_gap.max((sol.cost - grid).abs());
        vertex_gap = vertex_gap.max((sol.cost - exact).abs());
        for (p, t) in sol.payoff.iter().zip(&target) {
            worst_dom = worst_dom.max(t - p);
        }
    }
    r.check(format!("all 20 solved [{failures} errors]"), failures == 0);
    r.check(format!("|simplex - grid| <= 1e-4 [max {worst_gap:.2e}]"), worst_gap <= 1e-4);
    r.check(format!("payoff dominates target within 1e-7 [max shortfall {worst_dom:.2e}]"), worst_dom <= 1e-7);
    r.check(format!("|simplex - vertex enumeration| <= 1e-9 [max {vertex_gap:.2e}]"), vertex_gap <= 1e-9);
    r.finish(Duration::from_secs(10));
}

#[test]
fn criterion_7_bench_shape() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut r = Report::new(7, "bench over ranks 3..30 with 50 reps");
    let table = r.timed(|| run_bench(1, 3, 30, 50, &opts()));
    let ok = table.is_ok();
    let table = table.unwrap_or_default();
    r.check("bench completes", ok && table.len() == 28);
    let sub: Vec<f64> = table.iter().map(|t| t.sublat_total_s).collect();
    let min: Vec<f64> = table.iter().map(|t| t.minlat_total_s).collect();
    let drops = |v: &[f64]| -> Vec<usize> {
        v.windows(2)
            .enumerate()
            .filter(|(_, w)| w[1] < w[0])
            .map(|(i, _)| i + 4)
            .collect()
    };
    r.check(format!("sublattice totals monotone in rank [drops at {:?}]", drops(&sub)), drops(&sub).is_empty());
    r.check(format!("minlat totals monotone in rank [drops at {:?}]", drops(&min)), drops(&min).is_empty());
    let last = table.last().map_or((f64::NAN, f64::NAN), |t| (t.sublat_total_s, t.minlat_total_s));
    r.check(
        format!("rank-30 totals < 60 s [{:.3} s, {:.3} s]", last.0, last.1),
        last.0 < 60.0 && last.1 < 60.0,
    );
    r.finish(Duration::from_secs(600));
}
