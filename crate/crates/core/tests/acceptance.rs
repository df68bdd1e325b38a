//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! verdicts are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ncalg::algebra::{
    anick_defect, brute_algebra_dims, brute_algebra_matrix, brute_cyclic_dims, compute_l_circ, NCPoly, Presentation,
    DEFAULT_PATH_CAP,
};
use ncalg::catalog::{datum_catalog, monomial_catalog, wild_quivers, DEFAULT_SEED};
use ncalg::datum::VLDatum;
use ncalg::prepro::{
    a_g_n_circ_check, affine_family, affine_identity_check, affine_shape, dynkin_d_polynomial, molien_check,
    partial_preprojective, partial_presentation, preprojective_datum, FiniteSubgroupSL2, GroupKind,
};
use ncalg::quiver::shapes;
use ncalg::randmat::{ds_moment, mc_matrix_integral, MomentTerm};
use ncalg::series::{infinite_product_zeta, MatSeries, TruncSeries, DEFAULT_DET_BOUND};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn within_time(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn affine_identity() -> Verdict {
    let start = Instant::now();
    let mut shapes_checked = 0;
    for shape in affine_family() {
        let (q, o) = affine_shape(shape).map_err(e)?;
        let rep = affine_identity_check(&q, o, 30, DEFAULT_DET_BOUND).map_err(e)?;
        ensure(rep.equal, || format!("~{shape} differs at t^{:?}", rep.first_diff))?;
        shapes_checked += 1;
    }
    let t = within_time(start, Duration::from_secs(10))?;
    Ok(format!("{shapes_checked} shapes equal to t^30 in {t:.2?}"))
}

fn d_table() -> Verdict {
    for shape in affine_family() {
        let rep = dynkin_d_polynomial(shape, 0, DEFAULT_DET_BOUND).map_err(e)?;
        ensure(rep.equal, || format!("~{shape} differs at t^{:?}", rep.first_diff))?;
    }
    Ok("15 determinants equal the tabulated polynomials".into())
}

fn molien() -> Verdict {
    for n in 2..=6 {
        let g = FiniteSubgroupSL2::new(GroupKind::Cyclic(n)).map_err(e)?;
        let rep = molien_check(&g, 24).map_err(e)?;
        ensure(rep.equal, || format!("Z/{n} differs at t^{:?}", rep.first_diff))?;
    }
    Ok("Z/2..Z/6 equal to t^24".into())
}

fn wild_oracle() -> Verdict {
    let start = Instant::now();
    let quivers = wild_quivers();
    for (name, q) in &quivers {
        let datum = preprojective_datum(q).map_err(e)?;
        let pres = datum.presentation().expect("attached relations");
        let brute = brute_algebra_matrix(pres, 6, DEFAULT_PATH_CAP).map_err(e)?;
        let h_a = datum.hilbert_a(6).map_err(e)?;
        ensure(h_a == brute, || format!("{name}: h(A) differs from the oracle"))?;
        let oa = datum.hilbert_oa(5).map_err(e)?;
        let cyclic = brute_cyclic_dims(pres, 5, DEFAULT_PATH_CAP).map_err(e)?.sym_exp().map_err(e)?;
        ensure(oa == cyclic, || {
            format!("{name}: h(O(A)) differs at t^{:?}", oa.sub(&cyclic).ok().and_then(|d| d.first_nonzero()))
        })?;
        let defect = anick_defect(&brute, &datum.h_v(6), &datum.h_l(6)).map_err(e)?;
        ensure(defect.is_zero(), || format!("{name}: Anick defect {:?}", defect.first_nonzero()))?;
    }
    let t = within_time(start, Duration::from_secs(60))?;
    Ok(format!("{} wild quivers agree with the oracle in {t:.2?}", quivers.len()))
}

fn riemsur() -> Verdict {
    let (h, o) = a_g_n_circ_check(2, 2, 10, 8, DEFAULT_DET_BOUND).map_err(e)?;
    ensure(h.equal, || format!("h(A_{{2,2}}) differs at t^{:?}", h.first_diff))?;
    ensure(o.equal, || format!("h(O(A_{{2,2}})) differs at t^{:?}", o.first_diff))?;
    Ok("A_{2,2}: h to t^10 and h(O) to t^8 match the circ product".into())
}

fn monomial() -> Verdict {
    let catalog = monomial_catalog(5, DEFAULT_SEED);
    for (name, p) in &catalog {
        ensure(p.strongly_free(), || format!("{name} is not strongly free"))?;
        let mut den = TruncSeries::one(12);
        den.set_coeff(1, BigInt::from(-2));
        for w in p.relations() {
            let k = w.len();
            den.set_coeff(k, den.coeff(k) + 1);
        }
        let expected = den.inv().map_err(e)?;
        ensure(p.count_normal_words(12) == expected, || format!("{name}: normal words differ"))?;
        let cyclic = p.count_cyclic_avoiding(10, ncalg::monomial::DEFAULT_ENUMERATION_CAP).map_err(e)?;
        let zeta = p.to_datum().zeta(10).map_err(e)?;
        ensure(cyclic.sym_exp().map_err(e)? == zeta, || format!("{name}: cyclic words differ from zeta"))?;
    }
    Ok(format!("{} strongly-free sets: normal words to t^12, cyclic words to t^10", catalog.len()))
}

fn partial() -> Verdict {
    for (name, q) in [("A2", shapes::dynkin_a(2)), ("A3", shapes::dynkin_a(3))] {
        let series = partial_preprojective(&q, &[1], 5, DEFAULT_DET_BOUND).map_err(e)?;
        let pres = partial_presentation(&q, &[1]).map_err(e)?;
        let brute = brute_algebra_matrix(&pres, 5, DEFAULT_PATH_CAP).map_err(e)?;
        ensure(series.h == brute, || format!("{name}: h differs from the oracle"))?;
        ensure(compute_l_circ(&pres, 5).is_zero(), || format!("{name}: L° is not zero"))?;
    }
    Ok("A2 and A3 with J = {middle} match the oracle to t^5, L° = 0".into())
}

fn super_identity() -> Verdict {
    let n = 50;
    let mut lhs = TruncSeries::one(n);
    for k in (1..=n).step_by(2) {
        lhs = lhs.mul(&TruncSeries::one_minus_power(k, n)).map_err(e)?;
    }
    let odd_words = TruncSeries::new((0..=n).map(|k| BigInt::from(-((k % 2) as i64))).collect());
    ensure(odd_words.sym_exp().map_err(e)? == lhs, || {
        "sym_exp of odd cyclic words differs from the odd product".into()
    })?;
    // zeta for one odd generator: h(V) = -t
    let cartan = MatSeries::from_fn(1, n, |_, _| TruncSeries::from_i64s(&[1, 1], n));
    let rhs = infinite_product_zeta(&cartan).map_err(e)?;
    let ratio = lhs.mul(&rhs.inv().map_err(e)?).map_err(e)?;
    ensure(ratio == TruncSeries::one(n), || {
        format!(
            "LHS/RHS differs from 1 at t^{:?}",
            ratio.sub(&TruncSeries::one(n)).ok().and_then(|d| d.first_nonzero())
        )
    })?;
    Ok("LHS * RHS^-1 = 1 to t^50".into())
}

fn trace_moments() -> Verdict {
    let start = Instant::now();
    let t = |s, m, n| MomentTerm { s, m, n };
    let samples = 20_000;
    let a = ds_moment(6, &[t(1, 1, 1)], samples, 1).map_err(e)?;
    let b = ds_moment(6, &[t(2, 1, 1)], samples, 2).map_err(e)?;
    let c = ds_moment(6, &[t(1, 1, 0), t(2, 0, 1)], samples, 3).map_err(e)?;
    ensure((0.9..=1.1).contains(&a.mean_re), || format!("E|Tr u|^2 = {:.4}", a.mean_re))?;
    ensure((1.8..=2.2).contains(&b.mean_re), || format!("E|Tr u^2|^2 = {:.4}", b.mean_re))?;
    let cross = Complex64::new(c.mean_re, c.mean_im).norm();
    ensure(cross <= 0.1, || format!("|E[Tr u conj Tr u^2]| = {cross:.4}"))?;
    let elapsed = within_time(start, Duration::from_secs(120))?;
    Ok(format!(
        "d=6: {:.3} ± {:.3}, {:.3} ± {:.3}, |cross| {:.3} ({elapsed:.2?})",
        a.mean_re, a.stderr, b.mean_re, b.stderr, cross
    ))
}

fn matrix_integral() -> Verdict {
    let free = VLDatum::new(1, vec![vec![vec![0, 1]]], vec![vec![vec![]]], vec![], None).map_err(e)?;
    let est = mc_matrix_integral(&free, &[8], 4, 20_000, 42, false).map_err(e)?;
    let target = [1.0, 1.0, 2.0, 3.0, 5.0];
    let ok = est.within(&target, 3.0, 0.05);
    ensure(ok.iter().all(|&b| b), || format!("free algebra sigma distances {:?}", est.sigma_distances(&target)))?;

    let pi = preprojective_datum(&shapes::loops(2)).map_err(e)?;
    let est2 = mc_matrix_integral(&pi, &[10], 2, 20_000, 43, true).map_err(e)?;
    let target2 = [1.0, 4.0, 20.0];
    let ok2 = est2.within(&target2, 3.0, 0.05);
    ensure(ok2.iter().all(|&b| b), || format!("preprojective sigma distances {:?}", est2.sigma_distances(&target2)))?;
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(", ");
    Ok(format!("free ({}), preprojective/lambda ({})", fmt(&est.mean), fmt(&est2.mean)))
}

fn random_series(rng: &mut ChaCha8Rng, order: usize) -> TruncSeries {
    let mut c: Vec<i64> = (0..=order).map(|_| rng.random_range(-5..=5)).collect();
    c[0] = 0;
    TruncSeries::from_i64s(&c, order)
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, order: usize, identity_constant: bool) -> MatSeries {
    MatSeries::from_fn(n, order, |i, j| {
        let mut c: Vec<i64> = (0..=order).map(|_| rng.random_range(-3..=3)).collect();
        c[0] = if identity_constant { i64::from(i == j) } else { rng.random_range(-2..=2) };
        TruncSeries::from_i64s(&c, order)
    })
}

fn properties() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for k in 0..200 {
        let s = random_series(&mut rng, 12);
        let back = s.sym_exp().and_then(|x| x.sym_log()).map_err(e)?;
        ensure(back == s, || format!("sym_log(sym_exp(s)) != s for sample {k}"))?;
    }
    for k in 0..100 {
        let n = rng.random_range(1..=5);
        // 1 - h(V) + h(L) with nonnegative generator and relation counts
        let v = MatSeries::from_fn(n, 8, |_, _| {
            TruncSeries::from_i64s(&[0, rng.random_range(0..=3), rng.random_range(0..=2)], 8)
        });
        let l = MatSeries::from_fn(n, 8, |i, j| {
            TruncSeries::from_i64s(&[0, 0, if i == j { rng.random_range(0..=1) } else { 0 }], 8)
        });
        let m = MatSeries::identity(n, 8).sub(&v).and_then(|x| x.add(&l)).map_err(e)?;
        let prod = m.inv().and_then(|inv| inv.mul(&m)).map_err(e)?;
        ensure(prod == MatSeries::identity(n, 8), || format!("inverse fails for matrix {k}"))?;
    }
    for k in 0..100 {
        let n = rng.random_range(1..=4);
        let a = random_matrix(&mut rng, n, 6, false);
        let b = random_matrix(&mut rng, n, 6, k % 2 == 0);
        let lhs = a.mul(&b).and_then(|ab| ab.det()).map_err(e)?;
        let rhs = a.det().and_then(|da| b.det().and_then(|db| da.mul(&db))).map_err(e)?;
        ensure(lhs == rhs, || format!("det(AB) != det(A)det(B) for pair {k}"))?;
    }
    let catalog = datum_catalog().map_err(e)?;
    for (name, d) in &catalog {
        let hh = d.hochschild_series(8).map_err(e)?;
        let chi = hh.euler_characteristic(d.dim_i()).map_err(e)?;
        ensure(chi.is_zero(), || format!("{name}: Euler characteristic {chi}"))?;
    }
    Ok(format!("200 sym round trips, 100 inverses, 100 det pairs, {} Euler identities", catalog.len()))
}

fn quantum_plane() -> Verdict {
    let q = shapes::loops(2);
    let (x, y) = (0, 1);
    let rel = NCPoly::from_ints(&q, &[(1, &[y, x]), (-2, &[x, y])]).map_err(e)?;
    let pres = Presentation::new(q, vec![rel]).map_err(e)?;
    let dims = brute_algebra_dims(&pres, 8, DEFAULT_PATH_CAP).map_err(e)?;
    let expected = TruncSeries::new((1..=9).map(BigInt::from).collect());
    ensure(dims == expected, || format!("dims {dims}"))?;
    Ok("C_2[x,y] dims 1..9 to t^8".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("affine product identity", affine_identity),
        ("D(t) table", d_table),
        ("Molien series of cyclic groups", molien),
        ("wild preprojective algebras vs oracle", wild_oracle),
        ("A_{g,n} as a circ product", riemsur),
        ("strongly-free monomial algebras", monomial),
        ("partial preprojective algebras", partial),
        ("super identity", super_identity),
        ("unitary trace moments", trace_moments),
        ("matrix integral stabilization", matrix_integral),
        ("property suites", properties),
        ("quantum plane", quantum_plane),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("criterion {:2} PASS  {name}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name}: {msg}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
