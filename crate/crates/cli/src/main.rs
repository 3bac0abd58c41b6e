use std::process::ExitCode;

fn main() -> ExitCode {
    let env = std::env::var(nichols_tool::MAX_DEGREE_ENV).ok();
    let code = nichols_tool::app::main_with(std::env::args_os(), env, &mut std::io::stdout());
    ExitCode::from(code as u8)
}
