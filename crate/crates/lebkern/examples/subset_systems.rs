//! Subset systems on a finite universe: axiom checks, fixpoint generation,
//! disjointification, and the exhaustive Dynkin / monotone-class verifiers.
//!
//! ```sh
//! cargo run --example subset_systems
//! ```

use lebkern::setsys::{
    disjointify, explicit_algebra, generate, is_system, rectangles, trace_family,
    verify_dynkin, verify_monotone_class, FiniteUniverse, SubsetFamily, SystemKind,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let universe = FiniteUniverse::new(3)?;

    // Generate the sigma-algebra from a single generator {e0}.
    let generators = SubsetFamily::new(universe.clone(), [0b001])?;
    let sigma = generate(SystemKind::SigmaAlgebra, &generators)?;
    println!("sigma({{e0}})      = {sigma}");

    // The same generators close differently per kind.
    for kind in SystemKind::ALL {
        let fam = generate(kind, &generators)?;
        println!("{:<16} -> {} members", kind.name(), fam.len());
    }

    // Axiom checking reports the first violated axiom with witnesses.
    let broken = SubsetFamily::new(universe.clone(), [0b000, 0b001, 0b111])?;
    let check = is_system(SystemKind::SigmaAlgebra, &broken);
    println!(
        "{broken} sigma-algebra? {} ({})",
        check.ok,
        check
            .violation
            .map(|v| v.axiom)
            .unwrap_or("all axioms hold")
    );

    // Disjointification preserves prefix unions.
    let layers: Vec<String> = disjointify(&[0b011, 0b110, 0b111])
        .iter()
        .map(|m| format!("{m:03b}"))
        .collect();
    println!("disjointify([011, 110, 111]) = [{}]", layers.join(", "));

    // Trace of the generated sigma-algebra on {e0, e1}.
    let traced = trace_family(&sigma, 0b011)?;
    println!("trace on {{e0,e1}} = {traced}");

    // Rectangles of two power sets satisfy the explicit-algebra hypotheses.
    let s2 = SubsetFamily::power_set(FiniteUniverse::new(2)?);
    let rect = rectangles(&s2, &s2)?;
    let alg = explicit_algebra(&rect)?;
    println!(
        "explicit algebra of 2x2 rectangles: {} members (equals the generated one: {})",
        alg.len(),
        alg == generate(SystemKind::SetAlgebra, &rect)?
    );

    // Exhaustive theorem verification at desk scale.
    for n in 1..=3 {
        let dynkin = verify_dynkin(n)?;
        let mono = verify_monotone_class(n)?;
        println!("{dynkin}; {mono}");
    }
    Ok(())
}
