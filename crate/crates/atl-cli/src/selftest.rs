//! Built-in deterministic self-checks: a condensed version of the library's
//! law suites, runnable in the field.

use atl_core::algebra::AlgebraElement;
use atl_core::cellrep::{action_matrix, gram_matrix, tau_set, twist_pushing_check,
    verify_det_identity};
use atl_core::diagram::{binomial, enumerate_standard, AffineDiagram};
use atl_core::laurent::{CoeffDomain, LaurentPoly};
use atl_core::matrix::LaurentMatrix;
use atl_core::rng::Rng;
use atl_core::sample::{random_diagram, random_element};

pub fn run(seed: u64) -> u8 {
    let mut fails = 0u32;
    let mut check = |name: &str, ok: bool| {
        println!("{} {name}", if ok { "ok  " } else { "FAIL" });
        if !ok {
            fails += 1;
        }
    };
    let dom = CoeffDomain::LaurentInQ;
    let mut rng = Rng::new(seed);

    check("twist inverse by reflection (k <= 6)", (1..=6).all(|k| {
        let t = AffineDiagram::twist(k);
        let r = t.compose(&t.reflect()).unwrap();
        r.diagram == AffineDiagram::identity(k) && r.loops == 0
    }));

    let mut assoc = true;
    for _ in 0..50 {
        let n = rng.range_i64(1, 4) as u32;
        let a = random_diagram(&mut rng, n, n, 3);
        let b = random_diagram(&mut rng, n, n, 3);
        let c = random_diagram(&mut rng, n, n, 3);
        let l = a.compose(&b).unwrap();
        let lt = l.diagram.compose(&c).unwrap();
        let r = b.compose(&c).unwrap();
        let rt = a.compose(&r.diagram).unwrap();
        assoc &= lt.diagram == rt.diagram && l.loops + lt.loops == r.loops + rt.loops;
    }
    check("composition associativity (50 random triples)", assoc);

    let mut star = true;
    for _ in 0..50 {
        let n = rng.range_i64(1, 4) as u32;
        let a = random_element(&mut rng, n, 2, 2, &dom).unwrap();
        let b = random_element(&mut rng, n, 2, 2, &dom).unwrap();
        star &= a.multiply(&b).unwrap().star() == b.star().multiply(&a.star()).unwrap();
    }
    check("star anti-automorphism (50 random pairs)", star);

    check(
        "standard counts are binomial (N <= 8)",
        (1..=8u32).all(|n| {
            tau_set(n).into_iter().all(|k| {
                enumerate_standard(k, n).unwrap().len() as u64
                    == binomial(n as u64, ((n - k) / 2) as u64)
            })
        }),
    );

    check(
        "det R_k = +-G_k (N <= 4)",
        (1..=4u32)
            .all(|n| tau_set(n).into_iter().all(|k| verify_det_identity(k, n, &dom).is_ok())),
    );

    let mut pushing = true;
    for _ in 0..25 {
        let n = rng.range_i64(1, 4) as u32;
        let ts: Vec<u32> = tau_set(n).into_iter().filter(|&t| t > 0).collect();
        if ts.is_empty() {
            continue;
        }
        let r = ts[rng.below(ts.len() as u64) as usize];
        let basis = enumerate_standard(r, n).unwrap();
        let mu = basis[rng.below(basis.len() as u64) as usize].clone();
        let nu = basis[rng.below(basis.len() as u64) as usize].clone();
        for k in tau_set(n) {
            pushing &= twist_pushing_check(&mu, &nu, k, &dom).unwrap();
        }
    }
    check("twist pushing identity (25 random pairs)", pushing);

    let tau3 = AlgebraElement::from_diagram(3, &dom, AffineDiagram::twist(3)).unwrap();
    let x = |e: i64| LaurentPoly::x_pow(&dom, e);
    let z = LaurentPoly::zero(&dom);
    let expect = LaurentMatrix::from_rows(
        &dom,
        vec![
            vec![z.clone(), z.clone(), x(0)],
            vec![x(1), z.clone(), z.clone()],
            vec![z.clone(), x(0), z.clone()],
        ],
    )
    .unwrap();
    check(
        "three-strand golden action matrix",
        action_matrix(&tau3, 1).unwrap() == expect
            && gram_matrix(1, 3, &dom).unwrap().laurent_det().is_ok(),
    );

    if fails == 0 {
        println!("selftest: all checks passed");
        0
    } else {
        println!("selftest: {fails} check(s) FAILED");
        1
    }
}
