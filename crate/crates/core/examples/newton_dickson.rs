//! Newton's identities and Dickson polynomials over Q.
use num_rational::BigRational;

use expsum::ring::Rationals;
use expsum::symmetric::{
    dickson_generating_check, dickson_sequence, dickson_waring, elementary_from_power_sums,
    power_sums_from_elementary, two_var_dickson, DicksonParams,
};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() -> expsum::Result<()> {
    let e = vec![q(3, 1), q(-1, 2), q(2, 3)];
    let p = power_sums_from_elementary(&Rationals, &e, 6);
    println!("p_1..p_6 = {}", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    let back = elementary_from_power_sums(&Rationals, &p, 3)?;
    println!("e back   = {}", back.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));

    // roots 1, 2, 3: e = (6, 11), a = 6 and D_n = 1 + 2^n + 3^n
    let params = DicksonParams::new(vec![q(6, 1), q(11, 1)], q(6, 1));
    let d = dickson_sequence(&Rationals, &params, 8);
    for n in 1..=8 {
        println!("D_{n} = {}  waring {}", d[n], dickson_waring(&Rationals, &params, n)?);
    }
    let series_ok = dickson_generating_check(&Rationals, &params, 8).iter().all(|r| r.equal);
    println!("generating series agrees: {series_ok}");
    println!("D_5(x=3, a=2) = {}", two_var_dickson(&Rationals, &q(3, 1), &q(2, 1), 5));
    Ok(())
}
