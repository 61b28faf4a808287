#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "dfacert/game.hpp"

namespace dfacert {

// Line-oriented automaton text format:
//
//   ; optional comment
//   alphabet: a b c
//   states: 9
//   initial: 0
//   accepting: 7 8
//   0 a 1
//   ...
//
// One `src letter dst` line per transition; missing transitions make the
// automaton partial. Parse errors carry the offending line number.
PartialDfa parse_dfa_text(const std::string& text);
PartialDfa parse_dfa_file(const std::string& path);
std::string format_dfa_text(const PartialDfa& d);
std::string format_dfa_text(const Dfa& d);
void write_dfa_file(const std::string& path, const Dfa& d);

// Transcript JSON:
//   {"k":2,"alphabet":["a","b"],"y1":1,"rounds":[{"x":"a","y":2},...]}
// '#' is the reserved reset letter; states are 1-based.
std::string transcript_to_json(const Transcript& t);
Transcript transcript_from_json(const std::string& json);

// A certificate is a transcript plus the violated clause:
//   {..., "witness":{"kind":"agreement","j1":2,"j2":3,
//                    "segment1":["a"],"segment2":["a","b"],
//                    "member1":true,"member2":false}}
struct Certificate {
    Transcript transcript;
    ViolationWitness witness;
};

std::string certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const std::string& json);
void write_certificate_file(const std::string& path, const Certificate& c);
Certificate read_certificate_file(const std::string& path);

// Re-validates the claimed clause against the transcript: positions must
// exhibit exactly the violation the witness names. Returns an explanation
// instead of throwing; empty optional means the certificate is accepted.
std::optional<std::string> check_certificate(const Certificate& c, const Dfa& language);
std::optional<std::string> check_certificate_sep(const Certificate& c, const Dfa& l1,
                                                 const Dfa& l2);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace dfacert
