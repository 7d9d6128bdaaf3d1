//! `seqfmeca mutate`: one sequence-diagram file per mutant trace.

use crate::output::{load_profiles, load_valid_model, write_file, CmdError};
use crate::MutateArgs;
use seqfmeca_core::catalog::{enumerate_candidates, ErrorModelId, FailureModeCandidate};
use seqfmeca_core::report::{emit_mutant_sequence, mutant_file_name};
use seqfmeca_core::trace::mutate;

pub fn run(args: &MutateArgs) -> Result<(), CmdError> {
    let model = load_valid_model(&args.model, false)?;
    let profiles = load_profiles(args.profile.as_deref())?;
    let candidates = enumerate_candidates(&model, &profiles);

    let selected: Vec<&FailureModeCandidate> = if let Some(id) = &args.selector.candidate {
        match candidates.get(id) {
            Some(candidate) => vec![candidate],
            None => return Err(CmdError::Usage(format!("unknown candidate id `{id}`"))),
        }
    } else if let Some(tag) = &args.selector.error {
        let Some(error) = ErrorModelId::parse_tag(tag) else {
            return Err(CmdError::Usage(format!("unknown error model tag `{tag}`")));
        };
        candidates.items.iter().filter(|c| c.error == error).collect()
    } else {
        unreachable!("clap enforces the selector group");
    };

    std::fs::create_dir_all(&args.out_dir)
        .map_err(|e| CmdError::Io(format!("{}: {e}", args.out_dir.display())))?;

    let mut written = 0usize;
    for candidate in selected {
        let interaction = model
            .interaction(&candidate.interaction)
            .expect("candidate interactions exist");
        let mutants = mutate(interaction, candidate, args.seed)
            .map_err(|e| CmdError::Usage(e.to_string()))?;
        let total = mutants.len();
        for (index, mutant) in mutants.iter().enumerate() {
            let name = mutant_file_name(&candidate.id, index, total);
            let path = args.out_dir.join(name);
            write_file(&path, &emit_mutant_sequence(interaction, mutant))?;
            println!("{}", path.display());
            written += 1;
        }
    }
    eprintln!("{written} mutant trace(s) written to {}", args.out_dir.display());
    Ok(())
}
