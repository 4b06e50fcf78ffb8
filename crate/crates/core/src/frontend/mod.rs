//! Text grammar for polynomials, maps and job files, canonical rendering,
//! and the command-line driver.

mod cli;
mod jobfile;
mod parse;
mod render;

pub use cli::{run, Outcome, OutputFormat};
pub use jobfile::{JobFile, LoadError, LoadOptions, LookupError, Object, MAX_VARIABLES};
pub use parse::{
    parse_expr, tokenize, Expr, ParseError, ParseErrorKind, Tok, Token, MAX_DEPTH, MAX_EXPONENT,
};
pub use render::{
    parse_birmap, parse_map, parse_point, parse_poly, render_birmap_details, ReadError, Render,
};
