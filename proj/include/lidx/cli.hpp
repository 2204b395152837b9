#pragma once

#include <lidx/designer.hpp>
#include <lidx/sim.hpp>

#include <optional>
#include <string>
#include <vector>

namespace lidx {

// Design metadata carried inside a code-spec file.
struct SpecDesignInfo {
    DesignKind kind = DesignKind::canonical;
    double predicted_gain_db = 0;
    int copies = 1;
    Vec decomposition;
    std::vector<CollinearityWitness> level_witnesses;
    std::optional<CollinearityCertificate> certificate;
};

// On-disk description of a CRT index code: primes, length, one generator
// matrix per level (entries reduced into [0, prime)), optional design
// metadata. Serialized as JSON with format tag "crt-index-code-spec".
struct CodeSpecFile {
    std::vector<Int> primes;
    int length = 0;
    std::vector<Mat> level_generators;
    std::optional<SpecDesignInfo> design;
};

CodeSpecFile spec_from_design(const UniformDesign& design);
std::string spec_to_json(const CodeSpecFile& spec);
CodeSpecFile spec_from_json(const std::string& text);
void save_spec(const CodeSpecFile& spec, const std::string& path);
CodeSpecFile load_spec(const std::string& path);
CrtIndexCode instantiate_spec(const CodeSpecFile& spec, const Caps& caps = default_caps());

// "sqrt(187)", "3*sqrt(187)", "33" — exact square-root rendering of sq.
std::string render_surd(Int sq);

std::string gain_report_csv(const GainReport& report);
std::string gain_report_json(const GainReport& report);
std::string curves_csv(const std::vector<SerCurve>& curves, int levels);
std::string curves_json(const std::vector<SerCurve>& curves, int levels);

// Entry point of the command-line driver; args excludes the program name.
// Returns 0 on success, 1 on domain failures, 2 on usage errors.
int run_cli(const std::vector<std::string>& args);

} // namespace lidx
