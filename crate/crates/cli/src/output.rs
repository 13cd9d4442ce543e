//! Output envelope shared by every subcommand.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

/// Schema-stable report wrapper: every command emits these four fields.
#[derive(Debug, Serialize)]
pub struct Envelope {
    pub inputs: Value,
    pub result: Value,
    pub certified: bool,
    pub flags: Vec<String>,
}

pub fn emit(env: &Envelope, format: Format) {
    match format {
        Format::Json | Format::Csv => {
            println!("{}", serde_json::to_string_pretty(env).expect("serializable"));
        }
        Format::Text => {
            println!("inputs:    {}", env.inputs);
            println!("certified: {}", env.certified);
            for f in &env.flags {
                println!("flag:      {f}");
            }
            println!("result:");
            println!("{}", serde_json::to_string_pretty(&env.result).expect("serializable"));
        }
    }
}
