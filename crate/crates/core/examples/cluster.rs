//! Saving a fitted model and assigning new observations to components.
use mixcirc::cli::{ColumnSpec, ModelFile};
use mixcirc::mixture::{map_cluster, multi_start_fit, EmOptions, MixtureFit};
use mixcirc::simulate::{builtin_scenario, generate_seeded};

fn main() -> mixcirc::Result<()> {
    let spec = builtin_scenario(1)?.with_n(800);
    let train = generate_seeded(&spec.clone().with_seed(1))?;
    let fit = multi_start_fit(&train.data, 2, 10, 5, &[], &EmOptions::default())?;

    let path = std::env::temp_dir().join("mixcirc_cluster_example.json");
    let columns = ColumnSpec::parse_compact("theta:x:z", Default::default())?;
    ModelFile { columns, fit }.save(&path)?;
    let model = ModelFile::load(&path)?;

    let fresh = generate_seeded(&spec.with_n(10).with_seed(2))?;
    let scored = MixtureFit::from_params(&fresh.data, &model.fit.params(), model.fit.diagnostics.clone())?;
    let labels = map_cluster(&scored.responsibilities);
    println!("{:>3} {:>8} {:>6} {:>8}", "row", "theta", "label", "gamma");
    for (i, &l) in labels.iter().enumerate() {
        println!("{i:>3} {:>8.3} {:>6} {:>8.4}", fresh.data.response()[i], l + 1, scored.responsibilities.get(i, l));
    }
    Ok(())
}
