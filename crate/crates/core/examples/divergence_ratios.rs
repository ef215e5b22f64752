//! Consecutive ratios of `‖ζ^d‖²/d!²` for the conjugation: `(d + m/2)/(d + 1)`.

use fockpair::pairing::divergence_demo;

fn main() -> fockpair::Result<()> {
    for m in [1usize, 2, 4] {
        let ratios = divergence_demo(m)?;
        let shown: Vec<String> = ratios.iter().take(6).map(|r| format!("{r:.6}")).collect();
        println!("m={m}: {} ... d=30: {:.9} (formula {:.9})", shown.join(" "), ratios[30], (30.0 + m as f64 / 2.0) / 31.0);
    }
    Ok(())
}
