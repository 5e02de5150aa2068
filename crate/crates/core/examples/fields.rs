//! Field construction, tables, traces and subfields.
use expsum::field::{make_field, Elem, Field, DEFAULT_BUDGET};

fn main() -> expsum::Result<()> {
    let f9 = Field::parse("3^2", DEFAULT_BUDGET)?;
    println!("F_9 modulus {:?}, generator {}", f9.modulus(), f9.generator().0);
    for x in f9.elements(false) {
        println!("  {} digits {:?} trace {} log {:?}", x.0, f9.digits(x), f9.abs_trace(x), f9.log(x));
    }
    let f3 = make_field(3, 1)?;
    let f81 = f9.extension(2)?;
    let sub = f81.subfield(&f3)?;
    let y = f81.generator();
    println!("Tr_(81/3)(g) = {}, N_(81/3)(g) = {}", sub.trace(y)?.0, sub.norm(y)?.0);
    println!("g^-1 in F_9 = {}", f9.inv(f9.generator())?.0);
    assert_eq!(f9.mul(f9.generator(), f9.inv(f9.generator())?), Elem::ONE);
    match Field::parse("2^30", DEFAULT_BUDGET) {
        Err(e) => println!("2^30: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
