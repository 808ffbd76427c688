//! Regenerate the order-prediction table and the critical-weight analysis
//! as CSV on stdout.

use weno_maim::analysis::{appendix_a_csv, table1_csv};

fn main() {
    println!("# predicted orders near critical points");
    print!("{}", table1_csv());
    println!();
    println!("# critical weights and q_s maxima");
    print!("{}", appendix_a_csv());
}
