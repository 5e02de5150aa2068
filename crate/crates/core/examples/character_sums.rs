//! Weil sums, multiplicative sums, G_u(a, b) and G(f, g) over extensions.
use expsum::characters::MultiplicativeCharacter;
use expsum::charsum::{g_sum_brute, gfg_sum_brute, mult_sum_brute, weil_sum_brute, GSumSpec};
use expsum::field::{make_field, Elem, PolyOverFq};

fn main() -> expsum::Result<()> {
    let f5 = make_field(5, 1)?;
    let f = PolyOverFq::parse(&f5, "x^3+2x+1")?;
    let psi = MultiplicativeCharacter::new(&f5, 1);
    for s in 1..=3 {
        let w = weil_sum_brute(&f, s)?;
        let t = mult_sum_brute(&f, &psi, s)?;
        println!("s={s}  S = {w}  ~ {:.6}   T ~ {:.6}", w.to_complex(), t.to_complex());
    }
    let f4 = make_field(2, 2)?;
    let spec = GSumSpec::new(&f4, 3, Elem(2), Elem(3))?;
    for s in 1..=4 {
        println!("G_3^({s})(2, 3) over F_4 = {}", g_sum_brute(&spec, s)?);
    }
    let g = PolyOverFq::parse(&f5, "2x^2+x")?;
    println!("G(f, g) over F_5 = {}", gfg_sum_brute(&f, &g, 1)?);
    Ok(())
}
