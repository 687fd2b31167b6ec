//! Rule tables for the supported language families.

/// The 35 reserved words of Python 3.
pub const PYTHON_KEYWORDS: [&str; 35] = [
    "False", "None", "True", "and", "as", "assert", "async", "await", "break", "class",
    "continue", "def", "del", "elif", "else", "except", "finally", "for", "from", "global",
    "if", "import", "in", "is", "lambda", "nonlocal", "not", "or", "pass", "raise", "return",
    "try", "while", "with", "yield",
];

/// The C99 reserved word list.
pub const C99_KEYWORDS: [&str; 37] = [
    "auto", "break", "case", "char", "const", "continue", "default", "do", "double", "else",
    "enum", "extern", "float", "for", "goto", "if", "inline", "int", "long", "register",
    "restrict", "return", "short", "signed", "sizeof", "static", "struct", "switch", "typedef",
    "union", "unsigned", "void", "volatile", "while", "_Bool", "_Complex", "_Imaginary",
];

/// C keywords that introduce control flow or expressions; an identifier
/// following one of these is never a definition name.
pub const C_NON_TYPE_KEYWORDS: [&str; 12] = [
    "break", "case", "continue", "default", "do", "else", "for", "goto", "if", "return",
    "sizeof", "switch",
];

// Longest spellings first: the lexer takes the first table entry that matches.
pub const PYTHON_OPERATORS: [&str; 38] = [
    "**=", "//=", ">>=", "<<=", "->", ":=", "**", "//", "<<", ">>", "<=", ">=", "==", "!=",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@=", "+", "-", "*", "/", "%", "<", ">",
    "=", "!", "&", "|", "^", "~", "@", "?",
];

pub const C_OPERATORS: [&str; 41] = [
    "<<=", ">>=", "===", "!==", "->", "=>", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "??", "+", "-", "*", "/", "%",
    "<", ">", "=", "!", "&", "|", "^", "~", "?", "@", "\\",
];

pub fn is_python_keyword(word: &str) -> bool {
    PYTHON_KEYWORDS.contains(&word)
}

pub fn is_c_keyword(word: &str) -> bool {
    C99_KEYWORDS.contains(&word)
}

pub fn match_operator<'a>(table: &[&'a str], rest: &str) -> Option<&'a str> {
    table.iter().copied().find(|op| rest.starts_with(op))
}
