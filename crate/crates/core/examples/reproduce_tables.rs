//! Regenerate every reference table and print the failures, if any.

use rotormap::tables::reproduce_tables;

fn main() -> rotormap::Result<()> {
    let report = reproduce_tables()?;
    let passed = report.cells.iter().filter(|c| c.pass).count();
    println!("{passed}/{} cells pass", report.cells.len());
    for c in report.failures() {
        println!(
            "FAIL {} {} {}: expected {} got {:?}",
            c.section, c.case, c.quantity, c.expected, c.actual
        );
    }
    Ok(())
}
