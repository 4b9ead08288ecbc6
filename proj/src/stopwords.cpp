#include "semnet/stopwords.hpp"

namespace semnet {

const StopwordSet& default_stopwords() {
  static const StopwordSet words = {
    "a", "able", "about", "above", "according", "across", "after", "afterwards", "again", "against",
    "all", "almost", "alone", "along", "already", "also", "although", "always", "am", "among",
    "amongst", "an", "analysis", "analyze", "analyzed", "and", "another", "any", "anyhow", "anyone",
    "anything", "anyway", "anywhere", "approach", "approaches", "are", "around", "as", "at",
    "based", "be", "became", "because", "become", "becomes", "becoming", "been", "before",
    "beforehand", "behind", "being", "below", "beside", "besides", "between", "beyond", "both",
    "but", "by", "can", "cannot", "case", "cases", "consider", "considered", "could", "demonstrate",
    "demonstrated", "describe", "described", "did", "discuss", "discussed", "do", "does", "doing",
    "done", "down", "due", "during", "each", "effect", "effects", "either", "else", "elsewhere",
    "enough", "especially", "etc", "even", "ever", "every", "everyone", "everything", "everywhere",
    "except", "few", "find", "finds", "first", "for", "former", "formerly", "found", "from",
    "further", "furthermore", "given", "had", "has", "have", "having", "he", "hence", "her", "here",
    "hereafter", "hereby", "herein", "hers", "herself", "him", "himself", "his", "how", "however",
    "i", "ie", "if", "in", "indeed", "into", "investigate", "investigated", "is", "it", "its",
    "itself", "just", "last", "latter", "latterly", "least", "less", "many", "may", "me",
    "meanwhile", "method", "methods", "might", "mine", "more", "moreover", "most", "mostly", "much",
    "must", "my", "myself", "namely", "neither", "never", "nevertheless", "new", "next", "no",
    "nobody", "none", "noone", "nor", "not", "nothing", "novel", "now", "nowhere", "obtain",
    "obtained", "of", "off", "often", "on", "once", "one", "only", "onto", "or", "other", "others",
    "otherwise", "our", "ours", "ourselves", "out", "over", "overall", "own", "paper", "per",
    "perhaps", "present", "presented", "propose", "proposed", "rather", "related", "report",
    "reported", "result", "results", "same", "several", "she", "should", "show", "showed", "shown",
    "shows", "since", "so", "some", "somehow", "someone", "something", "sometime", "sometimes",
    "somewhere", "still", "studied", "studies", "study", "such", "suggest", "suggested", "than",
    "that", "the", "their", "theirs", "them", "themselves", "then", "thence", "there", "thereafter",
    "thereby", "therefore", "therein", "thereupon", "these", "they", "this", "those", "though",
    "through", "throughout", "thru", "thus", "to", "together", "too", "toward", "towards", "under",
    "until", "up", "upon", "us", "use", "used", "uses", "using", "very", "via", "was", "we", "well",
    "were", "what", "whatever", "when", "whence", "whenever", "where", "whereas", "whereby",
    "wherein", "whether", "which", "while", "whither", "who", "whoever", "whole", "whom", "whose",
    "why", "will", "with", "within", "without", "work", "works", "would", "yet", "you", "your",
    "yours", "yourself", "yourselves",
  };
  return words;
}

}  // namespace semnet
