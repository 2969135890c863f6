//! Integrates the Lorenz system with fixed-step RK4 and prints every `stride`-th
//! state as CSV.
//!
//! ```bash
//! cargo run -p perceptron-kpa --example lorenz_trajectory -- [h] [steps] [stride]
//! ```

use perceptron_kpa::lorenz::{rk4_step, LorenzState, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let h: f64 = args.next().map_or(Ok(0.01), |s| s.parse())?;
    let steps: usize = args.next().map_or(Ok(5000), |s| s.parse())?;
    let stride: usize = args.next().map_or(Ok(50), |s| s.parse())?;
    let cfg = SolverConfig::new(h)?;

    let mut s = LorenzState::new(1.0, 1.0, 0.0);
    println!("step,x,y,z");
    for n in 0..=steps {
        if n % stride.max(1) == 0 {
            println!("{n},{},{},{}", s.x, s.y, s.z);
        }
        s = rk4_step(s, cfg)?;
    }
    Ok(())
}
