// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "lexer.hpp"

#include <cctype>

#include "limitdl/core.hpp"

namespace limitdl::frontend::detail {

const char* describe(Tok t) noexcept {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Var: return "variable";
    case Tok::Int: return "integer";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::If: return "':-'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Less: return "'<'";
    case Tok::LessEq: return "'<='";
    case Tok::Greater: return "'>'";
    case Tok::GreaterEq: return "'>='";
    case Tok::End: return "end of input";
    }
    return "?";
}

namespace {

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

} // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) != 0) {
            advance(1);
            continue;
        }
        if (c == '%') {
            while (i < text.size() && text[i] != '\n') {
                advance(1);
            }
            continue;
        }
        Token tok;
        tok.loc = SourceLoc{line, col};
        if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) {
                ++j;
            }
            while (j < text.size() && text[j] == '\'') {
                ++j;
            }
            tok.text = std::string(text.substr(i, j - i));
            const bool upper = std::isupper(static_cast<unsigned char>(c)) != 0 || c == '_';
            tok.kind = (upper && tok.text != kIntegersPredicate) ? Tok::Var : Tok::Ident;
            advance(j - i);
            out.push_back(std::move(tok));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) != 0) {
                ++j;
            }
            if (j < text.size() && ident_char(text[j])) {
                throw InputError("malformed number", tok.loc);
            }
            tok.kind = Tok::Int;
            tok.text = std::string(text.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(tok));
            continue;
        }
        auto two = text.substr(i, 2);
        std::size_t len = 1;
        if (two == ":-") {
            tok.kind = Tok::If;
            len = 2;
        } else if (two == "<=") {
            tok.kind = Tok::LessEq;
            len = 2;
        } else if (two == ">=") {
            tok.kind = Tok::GreaterEq;
            len = 2;
        } else {
            switch (c) {
            case '(': tok.kind = Tok::LParen; break;
            case ')': tok.kind = Tok::RParen; break;
            case ',': tok.kind = Tok::Comma; break;
            case '.': tok.kind = Tok::Dot; break;
            case '+': tok.kind = Tok::Plus; break;
            case '-': tok.kind = Tok::Minus; break;
            case '*': tok.kind = Tok::Star; break;
            case '<': tok.kind = Tok::Less; break;
            case '>': tok.kind = Tok::Greater; break;
            default: throw InputError(std::string("unexpected character '") + c + "'", tok.loc);
            }
        }
        tok.text = std::string(text.substr(i, len));
        advance(len);
        out.push_back(std::move(tok));
    }
    Token end;
    end.kind = Tok::End;
    end.loc = SourceLoc{line, col};
    out.push_back(std::move(end));
    return out;
}

} // namespace limitdl::frontend::detail
