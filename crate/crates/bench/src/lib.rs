//! Benchmark fixtures.

use gpilab_core::builtins::Builtin;
use gpilab_core::format::Definition;
use gpilab_core::tideal::GeneratorSet;

/// The definition and stated generators of a builtin.
pub fn fixture(b: Builtin) -> (Definition, GeneratorSet) {
    let def = b.definition();
    let gens = GeneratorSet::new(b.generators(&def.action));
    (def, gens)
}
