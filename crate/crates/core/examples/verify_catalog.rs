use g2homog::catalog::{catalog, build_from_entry, verify_entry};
use g2homog::liealg::ScanConfig;

fn main() {
    let cfg = ScanConfig::default();
    let only: Option<String> = std::env::args().nth(1);
    for e in &catalog().entries {
        if let Some(o) = &only { if &e.id != o { continue; } }
        let t = std::time::Instant::now();
        match build_from_entry(e.clone()).and_then(|b| verify_entry(&b, &cfg)) {
            Ok(r) => {
                println!("{:14} pass={} dims=({},{},{}) irr={:?} def={} indef={} samples={} {:.1}s", r.id, r.pass, r.dims.d1, r.dims.d2, r.dims.d3, r.irreducible, r.form_types.has_definite, r.form_types.has_indefinite, r.form_types.samples, t.elapsed().as_secs_f64());
                for c in r.claims.iter().filter(|c| !c.pass) { println!("    FAIL {} expected={} computed={}", c.name, c.expected, c.computed); }
            }
            Err(err) => println!("{:14} ERROR {err}", e.id),
        }
    }
}
