//! The radio energy model: transmit cost across the amplifier branch
//! point, receive cost, and the per-round eligibility threshold.
//!
//!     cargo run --release --example energy_model

use wsn_lifetime::{EnergyModel, NetworkConfig};

fn main() {
    let config = NetworkConfig::default();
    let model = EnergyModel::from_config(&config);
    let l = model.packet_bits;

    println!("e_elec = {:.1e} J/bit, eps_fs = {:.1e}, eps_mp = {:.1e}", model.e_elec, model.eps_fs, model.eps_mp);
    println!("branch distance d0 = {:.4} m, packet = {} bits", model.d0, l);
    println!();
    println!("{:>10} {:>14}", "d [m]", "tx [J]");
    for d in [0.0, 20.0, 50.0, 80.0, model.d0, 90.0, 100.0, 150.0] {
        println!("{d:>10.4} {:>14.6e}", model.tx_energy(l, d));
    }
    println!();
    println!("rx({l} bits) = {:.6e} J", model.rx_energy(l));

    let threshold = model.eligibility_threshold(config.r_comm);
    println!(
        "eligibility threshold at r_comm = {} m: {:.6e} J (a fresh {} J sensor lasts about {} serving rounds)",
        config.r_comm,
        threshold,
        config.e_init_sensor,
        (config.e_init_sensor / threshold) as u32
    );
}
