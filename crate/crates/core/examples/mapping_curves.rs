//! Print sampled mapping curves `g_s(ω)` for a few schemes, and the distance
//! of each from the identity.

use weno_maim::mapping::MappingKind;
use weno_maim::runner::{map_dump, parse_scheme};

fn main() -> weno_maim::Result<()> {
    let schemes = [
        MappingKind::Henrick,
        MappingKind::improved_default(),
        MappingKind::maim1_default(),
        parse_scheme("maim5(4,1,1)")?,
    ];
    for kind in schemes {
        let rows = map_dump(&kind, 11)?;
        println!("{kind}");
        println!("  omega     g0        g1        g2");
        for r in &rows {
            println!("  {:.2}  {:.6}  {:.6}  {:.6}", r[0], r[1], r[2], r[3]);
        }
    }
    Ok(())
}
