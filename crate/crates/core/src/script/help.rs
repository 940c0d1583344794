/// One entry per command: name, usage line, description.
pub const COMMANDS: &[(&str, &str, &str)] = &[
    ("universe", "universe NAME N | universe NAME = {a,b,...}", "Define a universe of N points (labelled 1..N) or with the given labels, and make it current."),
    ("use", "use NAME", "Make a defined universe current."),
    ("class", "class NAME = [{..},{..}] [in UNIVERSE]", "Define a class of subsets of the current universe. `{{1},{2}}` is accepted as well."),
    ("seq", "seq NAME = prefix [..] cycle [..]", "Define the eventually periodic sequence: the prefix terms, then the cycle repeated forever."),
    ("partition", "partition NAME = [{..},{..}]", "Define a partition of the current universe."),
    ("let", "let NAME = COMMAND", "Run COMMAND and bind its value to NAME."),
    ("show", "show NAME", "Print a bound value."),
    ("op", "op NAME WORD", "Apply an operator word such as s, d, rsd, c, s_d (read left to right) to a class."),
    ("classify", "classify NAME", "Report every structural flag of a class with witnesses."),
    ("closure", "closure KIND NAME", "Least class containing NAME with property KIND: lattice, ring, algebra, dynkin, complete_ring, B, B_d, B_c, topology."),
    ("hierarchy", "hierarchy B|SigmaPi NAME", "Alternating union/intersection hierarchy with its stages, stabilization level and Kolmogoroff number."),
    ("intersect", "intersect A B", "Members common to two classes."),
    ("union", "union A B", "Members of either class."),
    ("meet", "meet P Q", "Coarsest common refinement of two partitions."),
    ("join", "join P Q", "Finest common coarsening of two partitions."),
    ("lattice", "lattice [UNIVERSE]", "The partition lattice of a universe of at most 7 points."),
    ("atoms", "atoms NAME", "Minimal nonempty members of a ring."),
    ("stone", "stone NAME", "Prime ideals of a ring and the basic open sets of its Stone space."),
    ("chi", "chi SEQ", "Exact values of the ternary characteristic function of a sequence and its classification."),
    ("bell", "bell N", "The N-th Bell number."),
    ("ramsey", "ramsey n m k FILE|all|pentagon", "Search for a monochromatic k-set: in a coloring read from FILE, in every m-coloring of the n-subsets, or in the pentagon coloring."),
    ("export", "export NAME json|dot [to PATH]", "Canonical JSON of any value, or Graphviz for partitions, lattices, hierarchies and Stone spaces."),
    ("assert", "assert EXPR", "Check A == B, A != B, A <= B, A < B, {..} in A, {..} notin A, A is FLAG, A is not FLAG, or numeric facts like `len A == 4`, `kolmogoroff A == 2`, `bell 5 == 52`. Exit status 1 on failure."),
    ("set", "set overwrite on|off", "Allow or forbid rebinding a name that is already bound."),
    ("help", "help [COMMAND]", "List commands, or describe one."),
];

pub fn lookup(cmd: &str) -> Option<(&'static str, &'static str, &'static str)> {
    COMMANDS.iter().copied().find(|&(name, _, _)| name == cmd)
}

pub fn overview() -> Vec<String> {
    let width = COMMANDS.iter().map(|(n, _, _)| n.len()).max().unwrap_or(0);
    COMMANDS.iter().map(|(name, usage, _)| format!("{name:<width$}  {usage}")).collect()
}

pub fn entry(cmd: &str) -> Option<Vec<String>> {
    lookup(cmd).map(|(_, usage, text)| vec![format!("usage: {usage}"), text.to_string()])
}
