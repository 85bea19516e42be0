// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "limitdl/error.hpp"

namespace limitdl::frontend::detail {

enum class Tok {
    Ident,    // lower-case identifier (predicates, object constants, keywords)
    Var,      // upper-case or '_' identifier
    Int,      // unsigned decimal literal
    LParen,
    RParen,
    Comma,
    Dot,
    If,       // :-
    Plus,
    Minus,
    Star,
    Less,
    LessEq,
    Greater,
    GreaterEq,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourceLoc loc;
};

const char* describe(Tok t) noexcept;

/// Throws InputError on a character that cannot start a token.
std::vector<Token> tokenize(std::string_view text);

} // namespace limitdl::frontend::detail
