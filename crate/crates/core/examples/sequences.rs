//! Two-valued sequences over F_16 and the convolution identity.
use expsum::field::{make_field, Elem};
use expsum::sequences::{
    autocorrelation_csv, autocorrelation_spectrum, build_sequence, convolution_identity_check,
    cross_correlation,
};

fn main() -> expsum::Result<()> {
    let f = make_field(2, 4)?;
    let p1 = build_sequence(&f, 1, Elem::ONE, false)?;
    println!("G_1(x), x = 1..15: {:?}", p1.values);
    print!("{}", autocorrelation_csv(&autocorrelation_spectrum(&p1)));
    let p2 = build_sequence(&f, 1, Elem(5), false)?;
    println!("cross-correlation a=1, a=5: {}", cross_correlation(&p1, &p2)?);
    let r = convolution_identity_check(&f, 1, Elem(3), Elem(6), Elem(9))?;
    println!("convolution lhs {} rhs {}", r.lhs, r.rhs);
    Ok(())
}
