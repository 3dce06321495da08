//! Parsing a session in the `.lq` input language and printing the full
//! report, as `lunaquot report` does.
//!
//! `cargo run --example session_report`

use lunaquot::cli::{emit_fixture_report, parse_session, render_text};

const SESSION: &str = "
field Q
group Z
ring A { x: (1); y: (-1); z: (-1); }
ring B { x: (1); y: (-1); z: (-1); w: (1); relations: z*w - 1; }
map f: A -> B { x -> x; y -> y; z -> z; }
point c in B { z = 1; w = 1; }
";

fn main() -> lunaquot::Result<()> {
    let session = parse_session(SESSION)?;
    print!("{}", session.canonical_text());
    println!();
    let mut out = String::new();
    render_text(&emit_fixture_report(&session)?, 0, &mut out);
    print!("{out}");
    Ok(())
}
