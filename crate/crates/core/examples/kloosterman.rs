//! Kloosterman sums over extensions by three routes.
use expsum::charsum::{
    g_sum_brute, kloosterman_dickson, kloosterman_printed_recursion, kloosterman_recursive,
    GSumSpec,
};
use expsum::cyclotomic::CyclotomicIntegers;
use expsum::field::{make_field, Elem};

fn main() -> expsum::Result<()> {
    let f = make_field(5, 1)?;
    let spec = GSumSpec::new(&f, 1, Elem(1), Elem(3))?;
    let ring = CyclotomicIntegers { order: 5 };
    let k = g_sum_brute(&spec, 1)?;
    println!("k = {k}");
    for s in 1..=5 {
        println!(
            "s={s} brute {}  recursion {}  dickson {}  without q {}",
            g_sum_brute(&spec, s as u32)?,
            kloosterman_recursive(&ring, &k, 5, s),
            kloosterman_dickson(&ring, &k, 5, s),
            kloosterman_printed_recursion(&ring, &k, s),
        );
    }
    Ok(())
}
