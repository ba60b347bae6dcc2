//! Prints the sign in `det R_k = +-G_k` for every admissible k up to N = 6,
//! with timings.

use atl_core::cellrep::{tau_set, verify_det_identity};
use atl_core::laurent::CoeffDomain;
use std::time::Instant;

fn main() {
    let dom = CoeffDomain::LaurentInQ;
    for n in 1..=6u32 {
        for k in tau_set(n) {
            let t = Instant::now();
            let sign = verify_det_identity(k, n, &dom).unwrap();
            println!("N={n} k={k}: det R_k = {}G_k  ({:.2?})", if sign > 0 { "+" } else { "-" }, t.elapsed());
        }
    }
}
