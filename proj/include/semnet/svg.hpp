#pragma once

#include <span>
#include <string>
#include <vector>

#include "semnet/evaluation.hpp"
#include "semnet/suggest.hpp"
#include "semnet/trends.hpp"

namespace semnet::svg {

// `comment` goes into an XML comment right after the root element opens.
std::string roc_plot(const RocCurve& curve, const std::string& comment = {});

// One lane per emergence year; the top concept and pair bars scaled to growth.
std::string trends_timeline(const std::vector<std::string>& names, const std::vector<EmergenceYear>& concepts,
                            const std::vector<EmergenceYear>& pairs, int top, const std::string& comment = {});

// Three 2-D panels of (pred/2, mean degree, cosS); highlighted records drawn on top.
std::string projection_panels(std::span<const SuggestionRecord> all, std::span<const SuggestionRecord> highlighted,
                              const std::string& comment = {});

std::string escape(const std::string& text);

}  // namespace semnet::svg
