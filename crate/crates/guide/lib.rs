//! The chapters of the book in `book/src`, one module each, so that
//! `cargo test` compiles and runs every listing.

#[doc = include_str!("../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../book/src/cyclotomic.md")]
pub mod cyclotomic {}
#[doc = include_str!("../../book/src/amplitudes.md")]
pub mod amplitudes {}
#[doc = include_str!("../../book/src/roots.md")]
pub mod roots {}
#[doc = include_str!("../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../book/src/projection.md")]
pub mod projection {}
#[doc = include_str!("../../book/src/formats.md")]
pub mod formats {}
#[doc = include_str!("../../book/src/cli.md")]
pub mod cli {}

#[cfg(test)]
mod tests {
    const SUMMARY: &str = include_str!("../../book/src/SUMMARY.md");
    const LIB: &str = include_str!("lib.rs");

    #[test]
    fn every_chapter_is_compiled() {
        let chapters: Vec<&str> = SUMMARY
            .lines()
            .filter_map(|l| l.split_once("](").map(|(_, rest)| rest.trim_end_matches(')')))
            .collect();
        assert_eq!(chapters.len(), 8);
        for chapter in chapters {
            let include = format!("include_str!(\"../../book/src/{chapter}\")");
            assert!(LIB.contains(&include), "{chapter} is listed in SUMMARY.md but not compiled");
        }
    }

    #[test]
    fn listings_are_rust_or_marked_otherwise() {
        for (name, text) in [
            ("introduction", include_str!("../../book/src/introduction.md")),
            ("cyclotomic", include_str!("../../book/src/cyclotomic.md")),
            ("amplitudes", include_str!("../../book/src/amplitudes.md")),
            ("roots", include_str!("../../book/src/roots.md")),
            ("verification", include_str!("../../book/src/verification.md")),
            ("projection", include_str!("../../book/src/projection.md")),
            ("formats", include_str!("../../book/src/formats.md")),
            ("cli", include_str!("../../book/src/cli.md")),
        ] {
            for fence in text.lines().filter(|l| l.starts_with("```")).step_by(2) {
                assert!(["```rust", "```text", "```console"].contains(&fence), "{name}: unlabelled fence {fence:?}");
            }
        }
    }
}
