use std::time::Instant;

use oritatami::certify::{dependency_depth, CurveSource, DelayBoundFamily};
use oritatami::embed::ShapeParams;

fn main() {
    let runs = [
        (CurveSource::koch(), DelayBoundFamily::koch(), (10, 2000), 5),
        (CurveSource::minkowski(), DelayBoundFamily::minkowski(), (70, 2000), 3),
    ];
    for (source, family, window, depth) in runs {
        for (d, l) in [(2, 3), (2, 4), (3, 3), (3, 4)] {
            for n in [1, 2] {
                let t = Instant::now();
                let p = dependency_depth(&source, ShapeParams::new(d, l).unwrap(), &family, n, window, depth).unwrap();
                println!(
                    "{} d={d} l={l} n={n} depth={} D=[{}, {}] constant={} lag={} first-D={:?} {:.2?}",
                    source.id,
                    p.expansion_depth,
                    p.min_depth(),
                    p.max_depth(),
                    p.is_constant(),
                    p.max_lag(),
                    &p.depth[..12],
                    t.elapsed()
                );
            }
        }
    }
}
