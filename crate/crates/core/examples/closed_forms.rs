//! The u = 2 closed forms against enumeration, printed and recounted.
use expsum::charsum::{ClosedFormCheck, ClosedFormVariant};
use expsum::field::{make_field, Elem};

fn main() -> expsum::Result<()> {
    for (p, e) in [(2, 2), (3, 1), (5, 1)] {
        let f = make_field(p, e)?;
        for variant in [ClosedFormVariant::Printed, ClosedFormVariant::Corrected] {
            let c = ClosedFormCheck::run(&f, Elem(1), Elem(2), variant)?;
            let closed: Vec<String> = c.closed.coeffs.iter().map(|x| x.to_string()).collect();
            println!("q={} {variant:?}: [{}] matches {:?}", f.order(), closed.join(", "), c.matches);
        }
        let l: Vec<String> = ClosedFormCheck::run(&f, Elem(1), Elem(2), ClosedFormVariant::Corrected)?
            .enumerated
            .coeffs
            .iter()
            .map(|x| x.to_string())
            .collect();
        println!("q={} enumerated: [{}]", f.order(), l.join(", "));
    }
    Ok(())
}
