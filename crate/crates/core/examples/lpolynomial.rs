//! L-polynomial of G_u(a, b), its spectral roots and predicted sums.
use expsum::charsum::{
    g_sum_brute, l_polynomial, predict_sum, spectral_from_lpoly, verify_weil_bound, GSumSpec,
};
use expsum::field::{make_field, Elem};

fn main() -> expsum::Result<()> {
    let f = make_field(7, 1)?;
    let spec = GSumSpec::new(&f, 3, Elem(2), Elem(5))?;
    let l = l_polynomial(&spec, true)?;
    for (k, a) in l.coeffs.iter().enumerate() {
        println!("A_{k} = {a}");
    }
    println!("A_5 = {}", l.next_coefficient.as_ref().unwrap());
    let sp = spectral_from_lpoly(&l)?;
    let w = verify_weil_bound(&sp, f.order(), spec.bound_hypothesis());
    println!("|omega|/sqrt(q) in [{:.9}, {:.9}], asserted {}", w.min_ratio, w.max_ratio, w.asserted);
    for s in 1..=5 {
        let predicted = predict_sum(&sp, f.characteristic(), s)?;
        let brute = g_sum_brute(&spec, s as u32)?;
        println!("s={s} predicted {predicted}  brute {brute}  equal {}", predicted == brute);
    }
    Ok(())
}
