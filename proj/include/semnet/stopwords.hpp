#pragma once

#include <string>
#include <unordered_set>

namespace semnet {

using StopwordSet = std::unordered_set<std::string>;

// Bundled English stopword list for keyword extraction: common function words
// plus frequent scientific-prose filler ("paper", "results", "show", ...).
const StopwordSet& default_stopwords();

}  // namespace semnet
