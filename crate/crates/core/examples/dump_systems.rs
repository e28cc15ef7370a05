//! Prints a reference system as a system document.
//!
//! `cargo run -p atam --example dump_systems -- coop`

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "nds".to_string());
    let sys = match name.as_str() {
        "nds" => atam::systems::nds(),
        "coop" => atam::systems::coop(),
        "domino" => atam::systems::domino(),
        "ray" => atam::systems::ray(),
        other => {
            eprintln!("unknown reference system {other:?}; try nds, coop, domino or ray");
            std::process::exit(1);
        }
    };
    print!("{}", atam::serialize_system(&name.to_uppercase(), &sys));
}
