use std::time::Instant;

use arith_core::SieveCache;
use extremal_apps::{sum_recip_b, sum_recip_b_interval, sum_recip_b_prime};
use ssf_counting::{count_a, enumerate_b, CountQuery, Rational64};

#[test]
fn profile_components() {
    let cache = SieveCache::build(1 << 20).unwrap();
    let x = Rational64::from_int(10_000);

    let t = Instant::now();
    for _ in 0..20 {
        let b = enumerate_b(&cache, x).unwrap();
        std::hint::black_box(b.members().len());
    }
    println!("enumerate_b(1e4): {:?}", t.elapsed() / 20);

    let t = Instant::now();
    for _ in 0..20 {
        let q = CountQuery::new(
            x,
            Rational64::from_int(1),
            arith_core::PrimeCutoff::integer(1),
        );
        std::hint::black_box(count_a(&cache, &q));
    }
    println!("count_a(1e4): {:?}", t.elapsed() / 20);

    let t = Instant::now();
    for _ in 0..20 {
        std::hint::black_box(sum_recip_b(&cache, x).unwrap());
    }
    println!("sum_recip_b(1e4): {:?}", t.elapsed() / 20);

    let t = Instant::now();
    for _ in 0..20 {
        std::hint::black_box(sum_recip_b_interval(&cache, x, 5).unwrap());
    }
    println!("interval(1e4, 5): {:?}", t.elapsed() / 20);

    let t = Instant::now();
    for _ in 0..20 {
        std::hint::black_box(sum_recip_b_prime(&cache, x).unwrap());
    }
    println!("sum_recip_b_prime(1e4): {:?}", t.elapsed() / 20);

    let t = Instant::now();
    std::hint::black_box(sum_recip_b(&cache, Rational64::from_int(1_000_000)).unwrap());
    println!("sum_recip_b(1e6): {:?}", t.elapsed());

    let t = Instant::now();
    std::hint::black_box(sum_recip_b_prime(&cache, Rational64::from_int(1_000_000)).unwrap());
    println!("sum_recip_b_prime(1e6): {:?}", t.elapsed());

    let t = Instant::now();
    let scan = extremal_apps::TauScan::new(&cache, Rational64::from_int(1_000_000)).unwrap();
    println!("TauScan::new(1e6): {:?}", t.elapsed());
    let t = Instant::now();
    let out = scan.minimize(Rational64::from_int(1)).unwrap().unwrap();
    println!("minimize(1e6, 1): {:?}  k = {}", t.elapsed(), out.tau_x);
}
