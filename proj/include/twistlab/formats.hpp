#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "twistlab/cosets.hpp"
#include "twistlab/plumbing.hpp"

namespace twistlab {

/// Input error carrying the source name and 1-based line (0 when not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Diagram text format:
//
//   twistlab-diagram 1
//   curve <label> <points> [power <D>]
//   cross <label> <i> <label> <j> <eps(s,t)> <eps(t,s)>
//
// '#' starts a comment. Curves must be declared before they are crossed.

/// Syntax only; the diagram may still have violations.
PlumbingDiagram parse_diagram_text(const std::string& text, const std::string& source = "<string>");
/// Syntax plus validate(); the first violation is reported as a ParseError.
PlumbingDiagram parse_diagram_checked(const std::string& text, const std::string& source = "<string>");
PlumbingDiagram parse_diagram(const std::string& path);
std::string serialize_diagram(const PlumbingDiagram& d);

// Presentation text format:
//
//   twistlab-presentation 1
//   generators <n>
//   relator <letters...>     letters are +-(i + 1), e.g. "1 2 -1 -2"
//   subgroup <letters...>    optional subgroup generators
//
// An empty relator line is not allowed; the identity is never needed as a relator.

struct PresentationFile {
  Presentation presentation;
  std::vector<Word> subgroup;
};

PresentationFile parse_presentation_text(const std::string& text, const std::string& source = "<string>");
PresentationFile parse_presentation(const std::string& path);
std::string serialize_presentation(const PresentationFile& p);

std::string read_file(const std::string& path);

}  // namespace twistlab
