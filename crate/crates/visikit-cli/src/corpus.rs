//! The fixed benchmark corpus: 203 deterministic connected graphs with
//! 8 <= n <= 64 spanning cliques, cycles, grids, G(n,p), and subcubic
//! graphs. `bench` runs over exactly this list, and the acceptance suite
//! rebuilds it to re-verify reported sets, so the recipe must never depend
//! on anything but the constants below.

use visikit::generate::{generate, GraphKind};
use visikit::Graph;

pub struct CorpusEntry {
    /// Stable identifier encoding family, parameters, and generator seed.
    pub id: String,
    pub graph: Graph,
}

pub fn bench_corpus() -> Vec<CorpusEntry> {
    let mut entries = Vec::new();
    let mut push = |id: String, kind: GraphKind, seed: u64| {
        let graph = generate(&kind, seed).expect("corpus recipe is feasible");
        entries.push(CorpusEntry { id, graph });
    };

    for n in 8..=16 {
        push(format!("complete_n{n}"), GraphKind::Complete { n }, 0);
    }
    for n in (8..=64).step_by(2) {
        push(format!("cycle_n{n}"), GraphKind::Cycle { n }, 0);
    }
    for rows in 2..=8 {
        for cols in rows..=(64 / rows) {
            if rows * cols >= 8 {
                push(format!("grid_{rows}x{cols}"), GraphKind::Grid { rows, cols }, 0);
            }
        }
    }
    for (i, n) in (8..=64).step_by(2).enumerate() {
        let seed = 100 + i as u64;
        let p = 0.2;
        push(format!("random_n{n}_p0.2_s{seed}"), GraphKind::RandomConnected { n, p }, seed);
    }
    for (i, n) in (8..=64).step_by(2).enumerate() {
        let seed = 300 + i as u64;
        let p = 0.4;
        push(format!("random_n{n}_p0.4_s{seed}"), GraphKind::RandomConnected { n, p }, seed);
    }
    for (i, n) in (8..=64).step_by(2).enumerate() {
        let seed = 200 + i as u64;
        let m = n + 2;
        push(format!("subcubic_n{n}_m{m}_s{seed}"), GraphKind::RandomSubcubic { n, m }, seed);
    }
    entries
}
