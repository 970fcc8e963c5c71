#include <fstream>
#include <string_view>

#include "forage/error.hpp"
#include "forage/text.hpp"

namespace forage {
namespace {

// Standard English stopword list. Contracted forms are kept in their
// canonical spelling and additionally as the apostrophe-free pieces the
// tokenizer actually produces.
constexpr std::string_view kBundledStopwords[] = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves",
    "you", "you're", "you've", "you'll", "you'd", "your", "yours",
    "yourself", "yourselves", "he", "him", "his", "himself", "she",
    "she's", "her", "hers", "herself", "it", "it's", "its", "itself",
    "they", "them", "their", "theirs", "themselves", "what", "which",
    "who", "whom", "this", "that", "that'll", "these", "those", "am",
    "is", "are", "was", "were", "be", "been", "being", "have", "has",
    "had", "having", "do", "does", "did", "doing", "a", "an", "the",
    "and", "but", "if", "or", "because", "as", "until", "while", "of",
    "at", "by", "for", "with", "about", "against", "between", "into",
    "through", "during", "before", "after", "above", "below", "to",
    "from", "up", "down", "in", "out", "on", "off", "over", "under",
    "again", "further", "then", "once", "here", "there", "when",
    "where", "why", "how", "all", "any", "both", "each", "few", "more",
    "most", "other", "some", "such", "no", "nor", "not", "only", "own",
    "same", "so", "than", "too", "very", "s", "t", "can", "will",
    "just", "don", "don't", "should", "should've", "now", "d", "ll",
    "m", "o", "re", "ve", "y", "ain", "aren", "aren't", "couldn",
    "couldn't", "didn", "didn't", "doesn", "doesn't", "hadn", "hadn't",
    "hasn", "hasn't", "haven", "haven't", "isn", "isn't", "ma",
    "mightn", "mightn't", "mustn", "mustn't", "needn", "needn't",
    "shan", "shan't", "shouldn", "shouldn't", "wasn", "wasn't", "weren",
    "weren't", "won", "won't", "wouldn", "wouldn't", "rt", "via",
    "amp", "im", "ive", "dont", "cant", "wont", "didnt", "doesnt",
    "isnt", "arent", "wasnt", "werent", "youre", "youve", "youll",
    "youd", "shes", "hes", "thats", "theres", "theyre", "weve", "whats",
    "id", "ill", "u", "ur", "w", "b", "c", "e", "f", "g", "h", "j",
    "k", "l", "n", "p", "q", "r", "v", "x", "z",
};

}  // namespace

const StopwordSet& StopwordSet::bundled() {
    static const StopwordSet set = [] {
        StopwordSet s;
        for (const std::string_view w : kBundledStopwords) s.words_.emplace(w);
        return s;
    }();
    return set;
}

StopwordSet StopwordSet::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open stopword file: " + path.string());
    StopwordSet s;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        std::size_t start = line.find_first_not_of(' ');
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        s.words_.emplace(line.substr(start));
    }
    return s;
}

StopwordSet StopwordSet::from_words(std::span<const std::string> words) {
    StopwordSet s;
    for (const std::string& w : words) s.words_.emplace(w);
    return s;
}

bool StopwordSet::contains(std::string_view word) const {
    return words_.contains(std::string(word));
}

}  // namespace forage
