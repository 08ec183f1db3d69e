//! Run the differential fuzzer for a few seeds, then once with a planted fault.
use dynplanar::cli::{fuzz, FuzzConfig};
use dynplanar::engine::Mutation;

fn main() {
    for seed in 1..=3 {
        print!("{}", fuzz(FuzzConfig::new(seed, 8, 300)));
    }
    let mut cfg = FuzzConfig::new(1, 7, 300);
    cfg.strict = true;
    cfg.mutation = Some(Mutation::AdmitAll);
    print!("{}", fuzz(cfg));
}
