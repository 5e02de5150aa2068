//! Ratios |omega_j| / sqrt(q) where the bound's hypotheses fail.
use expsum::charsum::{probe_csv, probe_open_question, ProbeGrid};
use expsum::field::make_field;

fn main() -> expsum::Result<()> {
    let grid = ProbeGrid::new(vec![make_field(2, 2)?, make_field(3, 1)?], vec![2, 3]);
    let rows = probe_open_question(&grid)?;
    print!("{}", probe_csv(&rows));
    let outside = rows.iter().filter(|r| !r.hypotheses_ok).count();
    println!("{outside} of {} rows lie outside the hypotheses", rows.len());
    Ok(())
}
