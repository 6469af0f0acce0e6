use gmatroid::complex::independence_complex;
use gmatroid::facering::{certified_dims, lsop_random};
use gmatroid::matroid::Matroid;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use std::time::Instant;

fn main() {
    let primes = [1073741827u64, 1073741831, 2147483647];
    for s in [4usize, 5] {
        let m = Matroid::theta(s);
        let (c, _) = independence_complex(&m);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (forms, _) = lsop_random(&c, 97, &mut rng, 64).unwrap();
        let top = c.max_face_size() + 1;
        for upto in 0..=top {
            let t = Instant::now();
            let dims = certified_dims(&c, &forms, upto, &primes).unwrap();
            println!("theta({s}) upto degree {upto}: {:?} ({:?})", t.elapsed(), dims.last().map(|r| (r.dim, r.source)));
        }
    }
}
