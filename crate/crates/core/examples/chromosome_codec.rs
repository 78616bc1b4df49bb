// The 230-bit chromosome: field layout, encode/decode and the genetic
// operators acting on raw bits.

use std::error::Error;

use mentor_tune::eval::EvalParams;
use mentor_tune::ga::{crossover, mutate};
use mentor_tune::genome::{decode, encode, Chromosome, GenomeLayout};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let reference = EvalParams::reference();
    let c = encode(&reference)?;
    let bits = c.to_bit_string();
    for field in GenomeLayout::standard().fields().iter().take(7) {
        let end = field.offset + field.width;
        let value = reference.by_name(field.name).unwrap();
        println!("{:<24} bits {:>3}..{end:<3} {:>10} = {value}", field.name, field.offset, &bits[field.offset..end]);
    }
    println!("...");
    assert_eq!(decode(&c), reference);

    // Flipping the top bit of QUEEN_VALUE moves it by 512.
    let mut flipped = c;
    flipped.flip(40);
    println!("QUEEN_VALUE after flipping bit 40: {}", decode(&flipped).by_name("QUEEN_VALUE").unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let other = Chromosome::random(&mut rng);
    let (a, b) = crossover(&c, &other, 1.0, &mut rng);
    let child = mutate(&a, 0.002, &mut rng);
    println!("parent  {}", &bits[..60]);
    println!("other   {}", &other.to_bit_string()[..60]);
    println!("child a {}", &a.to_bit_string()[..60]);
    println!("child b {}", &b.to_bit_string()[..60]);
    println!("mutated child differs in {} bits", (0..230).filter(|&i| child.get(i) != a.get(i)).count());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
