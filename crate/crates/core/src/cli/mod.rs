//! The `lunaquot` command line: session files, command dispatch, and text or
//! JSON rendering.

mod commands;
mod output;
mod session;

pub use commands::{dispatch, emit_fixture_report, main_entry, run, CheckKind, Cli, Command, Outcome};
pub use output::{record_json, render_text, Fields, Node};
pub use session::{parse_session, NamedMap, NamedPoint, NamedRing, Session};
