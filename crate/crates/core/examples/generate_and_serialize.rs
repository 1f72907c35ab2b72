//! Seeded generation, the instance and witness file formats, and the
//! content hash that ties a witness to its instance.

use sutarski::generators::{generate, GeneratorConfig, GeneratorKind};
use sutarski::io::{parse_instance, InstanceFile, Metadata, WitnessFile};
use sutarski::solvers::brute_sut_audit;
use sutarski::{LatticeSpec, SutSolution};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = LatticeSpec::new(2, 2)?;
    for kind in GeneratorKind::ALL {
        let cfg = GeneratorConfig::new(spec, kind, 7);
        let f = generate(&cfg)?;
        let file = InstanceFile::from_function(&f, Some(Metadata::from_config(&cfg)))?;
        let text = file.to_text();
        assert!(parse_instance(&text)?.same_values(&f));
        print!("{text}");
        println!("  hash {}", file.content_hash());
    }

    // Mutations may or may not break anything; take the first seed that does.
    let (f, w) = (0..)
        .find_map(|seed| {
            let cfg = GeneratorConfig {
                mutations: 2,
                ..GeneratorConfig::new(spec, GeneratorKind::Mutated, seed)
            };
            let f = generate(&cfg).ok()?;
            let audit = brute_sut_audit(&f).ok()?;
            let w: SutSolution = audit.monotonicity_violation.or(audit.uniqueness_violation)?;
            Some((f, w))
        })
        .unwrap();
    let file = InstanceFile::from_function(&f, None)?;
    print!("{}", WitnessFile::new(w, Some(file.content_hash())).to_text());
    Ok(())
}
