//! Build a zero sequence, save it in both formats, read it back, shift the origin.

use expozeros::{load_path, Complex64, Zero, ZeroSequence};

fn main() -> expozeros::Result<()> {
    let seq = ZeroSequence::new(
        [
            Zero::simple(1.0, 0.0),
            Zero::simple(1.0, 0.0), // merged into multiplicity 2
            Zero::simple(-2.0, 0.5),
            Zero::simple(-2.0, -0.5),
        ],
        10.0,
    )?
    .with_provenance("hand-made");

    let report = seq.validate();
    println!("{report:#?}");

    let dir = std::env::temp_dir().join("expozeros-example");
    std::fs::create_dir_all(&dir)?;
    for name in ["zeros.txt", "zeros.json"] {
        let path = dir.join(name);
        seq.save(&path)?;
        let back = load_path(&path)?;
        assert_eq!(back.zeros(), seq.zeros());
        println!("{}:\n{}", path.display(), std::fs::read_to_string(&path)?);
    }

    // origin shifts cost completeness: the radius shrinks by |c|
    let shifted = seq.shift_origin(Complex64::new(0.5, 0.0))?;
    println!("shifted radius {} (was {})", shifted.truncation_radius(), seq.truncation_radius());
    println!("conjugate symmetric: {}", seq.is_conjugate_symmetric());
    Ok(())
}
