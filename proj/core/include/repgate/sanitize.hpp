#pragma once

#include "repgate/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace repgate::corpus {

struct SanitizeOptions {
    /// Harness headers whose #include lines are dropped (matched on the file name).
    std::vector<std::string> harness_includes{"std_testcase.h"};
    /// Prefix for neutral identifiers; `func_` yields func_001, func_002, ...
    std::string neutral_prefix{"func_"};
};

/// Removes leakage from a code sample:
///  1. identifiers containing `CWE` are renamed to neutral names, numbered by first appearance;
///  2. line and block comments are removed, string literals are left untouched;
///  3. `main` definitions, OMITBAD/OMITGOOD guards, INCLUDEMAIN blocks and harness includes go.
///
/// Throws SyntaxError (with position) when the source does not lex or its brackets do not
/// balance. sanitize(sanitize(x)) == sanitize(x).
[[nodiscard]] std::string sanitize(std::string_view source, Language lang, const SanitizeOptions& options = {});

}  // namespace repgate::corpus
