// Copyright 2026 The ddlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qasm_validator.h"

#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace qasm_check {

namespace {

struct Fail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Parser {
   public:
    explicit Parser(std::string_view s) : s_(s) {
    }

    Program run() {
        Program p;
        try {
            expect_word("OPENQASM");
            double v = number();
            if (v != 2.0) throw Fail("version must be 2.0");
            expect(';');
            if (peek_word() == "include") {
                word();
                string_literal();
                expect(';');
            }
            while (!at_end()) statement(p);
            p.ok = true;
        } catch (const Fail &e) {
            p.error = std::string(e.what()) + " at offset " + std::to_string(pos_);
        }
        return p;
    }

   private:
    void skip() {
        while (pos_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            } else if (s_.substr(pos_, 2) == "//") {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }
    bool at_end() {
        skip();
        return pos_ >= s_.size();
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    void expect(char c) {
        if (peek() != c) throw Fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    std::string word() {
        skip();
        std::size_t start = pos_;
        if (pos_ >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[pos_])))) throw Fail("expected identifier");
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }
    std::string peek_word() {
        std::size_t save = pos_;
        std::string w;
        try {
            w = word();
        } catch (const Fail &) {
        }
        pos_ = save;
        return w;
    }
    void expect_word(std::string_view w) {
        if (word() != w) throw Fail("expected '" + std::string(w) + "'");
    }
    void string_literal() {
        expect('"');
        while (pos_ < s_.size() && s_[pos_] != '"') ++pos_;
        if (pos_ >= s_.size()) throw Fail("unterminated string");
        ++pos_;
    }
    double number() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        if (start == pos_) throw Fail("expected number");
        return std::stod(std::string(s_.substr(start, pos_ - start)));
    }
    int integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw Fail("expected integer");
        return std::stoi(std::string(s_.substr(start, pos_ - start)));
    }

    // expr := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*
    double expr() {
        double v = term();
        for (;;) {
            if (accept('+')) v += term();
            else if (accept('-')) v -= term();
            else return v;
        }
    }
    double term() {
        double v = unary();
        for (;;) {
            if (accept('*')) v *= unary();
            else if (accept('/')) v /= unary();
            else return v;
        }
    }
    double unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        if (accept('(')) {
            double v = expr();
            expect(')');
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(peek()))) {
            if (word() != "pi") throw Fail("unknown identifier in expression");
            return std::numbers::pi;
        }
        return number();
    }

    std::pair<std::string, int> argument(const std::map<std::string, int> &regs) {
        std::string r = word();
        auto it = regs.find(r);
        if (it == regs.end()) throw Fail("undeclared register '" + r + "'");
        expect('[');
        int i = integer();
        expect(']');
        if (i < 0 || i >= it->second) throw Fail("index out of range for '" + r + "'");
        return {r, i};
    }

    void statement(Program &p) {
        static const std::map<std::string, std::pair<int, int>> gates{
            {"u3", {3, 1}}, {"x", {0, 1}}, {"y", {0, 1}}, {"z", {0, 1}},
            {"h", {0, 1}},  {"id", {0, 1}}, {"cx", {0, 2}}};
        std::string w = word();
        if (w == "qreg" || w == "creg") {
            std::string name = word();
            expect('[');
            int n = integer();
            expect(']');
            expect(';');
            if (n < 1) throw Fail("register size must be positive");
            if (qregs_.count(name) || cregs_.count(name)) throw Fail("register redeclared");
            (w == "qreg" ? qregs_ : cregs_)[name] = n;
            return;
        }
        Op op;
        op.name = w;
        if (w == "measure") {
            op.args.push_back(argument(qregs_));
            expect('-');
            expect('>');
            op.args.push_back(argument(cregs_));
            expect(';');
            p.ops.push_back(op);
            return;
        }
        auto g = gates.find(w);
        if (g == gates.end()) throw Fail("unknown gate '" + w + "'");
        if (accept('(')) {
            if (!accept(')')) {
                do {
                    op.params.push_back(expr());
                } while (accept(','));
                expect(')');
            }
        }
        if (static_cast<int>(op.params.size()) != g->second.first) throw Fail("wrong parameter count for " + w);
        do {
            op.args.push_back(argument(qregs_));
        } while (accept(','));
        expect(';');
        if (static_cast<int>(op.args.size()) != g->second.second) throw Fail("wrong qubit count for " + w);
        if (op.args.size() == 2 && op.args[0] == op.args[1]) throw Fail("cx needs distinct qubits");
        p.ops.push_back(op);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::map<std::string, int> qregs_, cregs_;
};

}  // namespace

Program parse(std::string_view text) {
    return Parser(text).run();
}

}  // namespace qasm_check
