// mdbook cannot run its own code blocks against a workspace crate, so each
// chapter is pulled in as the docs of an empty module and `cargo test --doc`
// runs the snippets. One module per chapter keeps failures attributable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/polytopes.md")]
pub mod polytopes {}
#[doc = include_str!("../../../book/src/columns.md")]
pub mod columns {}
#[doc = include_str!("../../../book/src/polygons.md")]
pub mod polygons {}
#[doc = include_str!("../../../book/src/automorphisms.md")]
pub mod automorphisms {}
#[doc = include_str!("../../../book/src/doubling.md")]
pub mod doubling {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
