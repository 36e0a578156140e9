//! `nucifera groups`: builtin constructors and table files.

use std::io::Write;

use crate::layout::{slug, write_file, Layout};
use crate::{emit, CliError, GroupsAction, EXIT_NEGATIVE, EXIT_OK};

use super::{is_format_error, load_table};

const BUILTINS: &str = "\
C(n)    cyclic group of order n, 1 <= n <= 64
D(n)    dihedral group of order n, n even, 4 <= n <= 64
S(k)    symmetric group on k points, 1 <= k <= 4
A(k)    alternating group on k points, 1 <= k <= 5
G x H   direct product, order at most 64
@FILE   multiplication table: first line n, then n rows of n indices
";

pub fn run(action: &GroupsAction, out: &mut dyn Write) -> Result<i32, CliError> {
    match action {
        GroupsAction::List => {
            emit(out, BUILTINS)?;
            Ok(EXIT_OK)
        }
        GroupsAction::Validate { path } => match load_table(path, None) {
            Ok(g) => {
                let p = g.involution_pair_partition();
                emit(
                    out,
                    &format!(
                        "valid group of order {}: {} involutions, {} inverse pairs\n",
                        g.order(),
                        p.involutions.len(),
                        p.pairs.len()
                    ),
                )?;
                Ok(EXIT_OK)
            }
            Err(e) if is_format_error(&e) => {
                Err(CliError::Usage(format!("{}: {e}", path.display())))
            }
            Err(e) => {
                emit(out, &format!("invalid: {e}\n"))?;
                Ok(EXIT_NEGATIVE)
            }
        },
        GroupsAction::Import {
            path,
            name,
            out: root,
        } => match load_table(path, name.as_deref()) {
            Ok(g) => {
                let target = Layout::new(root)
                    .tables_dir()
                    .join(format!("{}.table", slug(g.name())));
                write_file(&target, &g.to_table_text())?;
                emit(
                    out,
                    &format!(
                        "imported {} (order {}) to {}\n",
                        g.name(),
                        g.order(),
                        target.display()
                    ),
                )?;
                Ok(EXIT_OK)
            }
            Err(e) if is_format_error(&e) => {
                Err(CliError::Usage(format!("{}: {e}", path.display())))
            }
            Err(e) => Err(CliError::Negative(format!(
                "{}: not a group: {e}",
                path.display()
            ))),
        },
    }
}
