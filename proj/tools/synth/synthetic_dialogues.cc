// Copyright 2026 The USL-H Metric Authors
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
//

#include "synthetic_dialogues.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "uslh/perturb.h"
#include "uslh/random.h"
#include "uslh/text_io.h"

namespace uslh::synth {

namespace {

// One exchange is a short run of turns; each turn lists alternative
// phrasings. Slots in braces are filled once per dialogue.
using Turn = std::vector<std::string>;
using Exchange = std::vector<Turn>;

struct Topic {
  std::map<std::string, std::vector<std::string>> slots;
  std::vector<Exchange> exchanges;
};

const std::vector<Topic>& Topics() {
  static const std::vector<Topic> kTopics = {
      // restaurant
      {{{"food", {"pizza", "steak", "salad", "noodles", "fish", "soup", "curry", "sandwich"}},
        {"drink", {"coffee", "tea", "orange juice", "red wine", "beer", "lemonade"}},
        {"time", {"seven", "eight", "half past six", "nine"}},
        {"count", {"two", "three", "four", "six"}}},
       {{{"are you ready to order ?", "may i take your order now ?"},
         {"yes , i would like the {food} , please .", "i will have the {food} and a glass of {drink} ."},
         {"good choice . anything else ?", "sure , the {food} will be ready in ten minutes ."}},
        {{"what would you like to drink ?", "can i get you something to drink ?"},
         {"a cup of {drink} , please .", "just {drink} for me , thanks ."}},
        {{"how is the {food} here ?", "is the {food} good in this restaurant ?"},
         {"the {food} here is excellent , you should try it .", "i heard the {food} is a bit salty ."}},
        {{"i would like to book a table for {count} .", "do you have a table for {count} tonight ?"},
         {"certainly . for what time ?", "of course . what time would you like ?"},
         {"at {time} , please .", "around {time} if possible ."}},
        {{"could i have the bill , please ?", "can we pay now ?"},
         {"sure , here is your bill .", "of course . cash or card ?"},
         {"card , please .", "i will pay in cash ."}},
        {{"the {food} is cold .", "excuse me , this {food} is not what i ordered ."},
         {"i am very sorry . i will bring you a new one .", "sorry about that , let me change it for you ."}}}},
      // travel
      {{{"city", {"paris", "london", "tokyo", "beijing", "new york", "rome", "sydney"}},
        {"time", {"nine", "ten thirty", "noon", "five fifteen", "eight"}},
        {"vehicle", {"train", "bus", "plane", "ferry"}},
        {"days", {"three", "five", "seven", "ten"}}},
       {{{"when does the {vehicle} to {city} leave ?", "what time is the next {vehicle} to {city} ?"},
         {"the {vehicle} to {city} leaves at {time} .", "it leaves at {time} from platform four ."},
         {"how long does it take ?", "is it usually on time ?"},
         {"about two hours .", "it is almost always on time ."}},
        {{"i would like a ticket to {city} .", "one ticket to {city} , please ."},
         {"single or return ?", "one way or round trip ?"},
         {"return , please .", "just one way ."}},
        {{"have you ever been to {city} ?", "did you enjoy your trip to {city} ?"},
         {"yes , i spent {days} days in {city} last year .", "not yet , but i plan to visit {city} soon ."}},
        {{"how long will you stay in {city} ?", "how many days is your trip ?"},
         {"about {days} days .", "i will stay for {days} days on business ."}},
        {{"may i see your passport , please ?", "passport and boarding pass , please ."},
         {"here you are .", "sure , here it is ."},
         {"thank you . have a nice flight .", "everything is fine . enjoy your trip to {city} ."}}}},
      // shopping
      {{{"item", {"sweater", "jacket", "pair of shoes", "dress", "watch", "bag", "shirt"}},
        {"color", {"red", "blue", "black", "white", "green"}},
        {"price", {"twenty", "forty", "fifty", "ninety", "one hundred"}},
        {"size", {"small", "medium", "large"}}},
       {{{"how much is this {item} ?", "what is the price of the {color} {item} ?"},
         {"the {item} is {price} dollars .", "it costs {price} dollars ."},
         {"that is too expensive . can you give me a discount ?", "ok , i will take it ."},
         {"i can give you ten percent off .", "great , i will wrap it for you ."}},
        {{"do you have this {item} in {color} ?", "is there a {color} one ?"},
         {"yes , we have it in {color} .", "sorry , we only have it in black ."}},
        {{"can i try it on ?", "where is the fitting room ?"},
         {"sure , the fitting room is over there .", "of course , it is on your left ."},
         {"it fits me well .", "it is a little tight ."}},
        {{"what size do you wear ?", "which size do you need ?"},
         {"{size} , i think .", "i usually wear {size} ."}},
        {{"i want to return this {item} .", "can i get a refund for this {item} ?"},
         {"do you have the receipt ?", "what is wrong with it ?"},
         {"yes , here is the receipt .", "it has a hole in the sleeve ."}}}},
      // weather
      {{{"weather", {"sunny", "rainy", "cloudy", "windy", "snowy"}},
        {"day", {"tomorrow", "this weekend", "on monday", "tonight"}},
        {"temp", {"ten", "twenty", "thirty", "five"}}},
       {{{"what is the weather like {day} ?", "will it be {weather} {day} ?"},
         {"the forecast says it will be {weather} {day} .", "i heard it will be {weather} and about {temp} degrees ."},
         {"then we should bring an umbrella .", "good , we can go for a walk ."}},
        {{"it is so {weather} today .", "what a {weather} day !"},
         {"yes , i hope it changes {day} .", "i like this kind of weather ."}},
        {{"how cold does it get in winter here ?", "is it hot in summer ?"},
         {"it can drop to {temp} degrees below zero .", "it is usually around {temp} degrees ."}}}},
      // work
      {{{"job", {"an engineer", "an accountant", "a teacher", "a manager", "a designer", "a nurse"}},
        {"company", {"a bank", "a software company", "the hospital", "a trading company"}},
        {"years", {"two", "three", "five", "eight"}},
        {"day", {"monday", "friday", "tuesday", "next week"}}},
       {{{"what do you do for a living ?", "what is your job ?"},
         {"i am {job} at {company} .", "i work as {job} ."},
         {"do you like your job ?", "how long have you worked there ?"},
         {"yes , but the hours are long .", "about {years} years ."}},
        {{"why do you want to work for our company ?", "tell me about your experience ."},
         {"i have worked as {job} for {years} years .", "i think i can learn a lot here ."}},
        {{"when is the meeting ?", "did you finish the report ?"},
         {"the meeting is on {day} at ten .", "not yet , i will finish it by {day} ."}},
        {{"what salary do you expect ?", "how much do you expect to earn ?"},
         {"i expect a salary based on my experience .", "about the same as my last job ."}}}},
      // health
      {{{"symptom", {"headache", "sore throat", "fever", "stomachache", "cough"}},
        {"days", {"two", "three", "four"}},
        {"medicine", {"these pills", "this syrup", "some aspirin"}}},
       {{{"what seems to be the problem ?", "how are you feeling today ?"},
         {"i have a terrible {symptom} .", "i have had a {symptom} for {days} days ."},
         {"let me take your temperature .", "have you taken any medicine ?"},
         {"no , not yet .", "i took some aspirin this morning ."}},
        {{"how often should i take {medicine} ?", "should i take {medicine} before meals ?"},
         {"take {medicine} three times a day after meals .", "twice a day with water ."}},
        {{"you look pale . are you ok ?", "are you sick ?"},
         {"i have a {symptom} .", "i did not sleep well last night ."},
         {"you should see a doctor .", "go home and get some rest ."}}}},
      // school
      {{{"subject", {"math", "history", "chemistry", "english", "biology"}},
        {"exam", {"final exam", "midterm", "quiz"}},
        {"grade", {"an a", "a b", "a c"}}},
       {{{"how did you do on the {exam} ?", "did you pass the {subject} {exam} ?"},
         {"i got {grade} in {subject} .", "i think i failed the {subject} {exam} ."},
         {"you should study harder next time .", "congratulations !"}},
        {{"what is your favorite subject ?", "which class do you like best ?"},
         {"i like {subject} best .", "{subject} , because the teacher is great ."}},
        {{"can you help me with my {subject} homework ?", "do you understand this {subject} problem ?"},
         {"sure , let me have a look .", "sorry , i am not good at {subject} ."}}}},
      // movies
      {{{"movie", {"the new comedy", "that horror film", "the action movie", "the cartoon"}},
        {"time", {"seven", "nine", "eight thirty"}},
        {"actor", {"tom", "emma", "jack", "lucy"}}},
       {{{"shall we go to the cinema tonight ?", "do you want to see {movie} ?"},
         {"sure , what time does {movie} start ?", "good idea , i heard {movie} is funny ."},
         {"it starts at {time} .", "the show begins at {time} ."}},
        {{"did you like {movie} ?", "how was {movie} ?"},
         {"it was great , {actor} was wonderful in it .", "it was boring , i fell asleep ."}},
        {{"who is your favorite actor ?", "do you like {actor} ?"},
         {"i like {actor} very much .", "{actor} is my favorite ."}}}},
      // sports
      {{{"sport", {"tennis", "basketball", "football", "swimming", "table tennis"}},
        {"day", {"saturday", "sunday", "after work", "tomorrow morning"}},
        {"team", {"the lakers", "our school team", "the home team"}}},
       {{{"do you like playing {sport} ?", "how often do you play {sport} ?"},
         {"yes , i play {sport} every {day} .", "i play {sport} twice a week ."},
         {"would you like to play with me {day} ?", "let us play together some time ."},
         {"sure , see you {day} .", "that sounds great ."}},
        {{"did you watch the game last night ?", "who won the game ?"},
         {"{team} won by ten points .", "yes , {team} played very well ."}},
        {{"how do you keep fit ?", "what exercise do you do ?"},
         {"i go {sport} {day} .", "i do {sport} to stay in shape ."}}}},
      // housing
      {{{"room", {"flat", "house", "studio", "room"}},
        {"rent", {"eight hundred", "one thousand", "six hundred"}},
        {"area", {"downtown", "near the park", "close to the station"}}},
       {{{"i am looking for a {room} to rent .", "do you have any {room} available ?"},
         {"we have a nice {room} {area} .", "there is a {room} {area} for {rent} a month ."},
         {"how much is the rent ?", "can i see it this afternoon ?"},
         {"the rent is {rent} dollars a month .", "sure , i will show you around at three ."}},
        {{"does the rent include water and electricity ?", "are pets allowed in the {room} ?"},
         {"water is included , but electricity is not .", "sorry , no pets are allowed ."}},
        {{"the heating in my {room} is broken .", "the sink is leaking ."},
         {"i will send someone to fix it tomorrow .", "sorry , we will repair it right away ."}}}},
      // banking
      {{{"amount", {"five hundred", "one thousand", "two hundred", "three thousand"}},
        {"account", {"savings account", "checking account"}},
        {"currency", {"dollars", "euros", "yen", "pounds"}}},
       {{{"i would like to open a {account} .", "how do i open a {account} ?"},
         {"please fill in this form and show me your id .", "you need your passport and a small deposit ."},
         {"how much should i deposit ?", "is there a monthly fee ?"},
         {"at least {amount} {currency} .", "no , there is no fee ."}},
        {{"i want to exchange some {currency} .", "what is the exchange rate for {currency} today ?"},
         {"how much would you like to exchange ?", "the rate is on the board over there ."},
         {"{amount} {currency} , please .", "i see , thank you ."}},
        {{"i want to withdraw {amount} {currency} .", "can i take out {amount} {currency} ?"},
         {"please enter your password .", "sure , please sign here ."}}}},
      // family
      {{{"relative", {"sister", "brother", "mother", "father", "grandmother", "cousin"}},
        {"age", {"twelve", "twenty", "thirty", "sixty"}},
        {"city", {"shanghai", "boston", "toronto", "madrid"}}},
       {{{"how many people are there in your family ?", "do you have any brothers or sisters ?"},
         {"there are four of us .", "i have one {relative} ."},
         {"how old is your {relative} ?", "where does your {relative} live ?"},
         {"my {relative} is {age} .", "my {relative} lives in {city} ."}},
        {{"what are you doing this weekend ?", "any plans for the holiday ?"},
         {"i am visiting my {relative} in {city} .", "i will stay at home with my family ."}},
        {{"how is your {relative} ?", "is your {relative} feeling better ?"},
         {"my {relative} is fine , thanks for asking .", "much better , thank you ."}}}},
  };
  return kTopics;
}

const std::vector<std::string>& Greetings() {
  static const std::vector<std::string> k = {"hello .", "hi , how are you ?", "good morning .",
                                             "excuse me .", "hey , long time no see ."};
  return k;
}

const std::vector<std::string>& GreetingReplies() {
  static const std::vector<std::string> k = {"hi .", "i am fine , thank you . and you ?",
                                             "good morning . can i help you ?", "yes ?",
                                             "hello , nice to see you ."};
  return k;
}

const std::vector<std::string>& Closings() {
  static const std::vector<std::string> k = {"thank you very much .", "thanks a lot .",
                                             "ok , see you later .", "that is all , thanks ."};
  return k;
}

const std::vector<std::string>& ClosingReplies() {
  static const std::vector<std::string> k = {"you are welcome .", "my pleasure .", "bye .",
                                             "see you ."};
  return k;
}

const std::vector<std::string>& GenericReplies() {
  static const std::vector<std::string> k = {"i do not know .", "ok .", "i see .",
                                             "yes .", "sure .", "thank you .", "really ?"};
  return k;
}

// DailyDialog: 1 anger, 2 disgust, 3 fear, 4 happiness, 5 sadness, 6 surprise.
const std::map<int, std::vector<std::string>>& EmotionPhrases() {
  static const std::map<int, std::vector<std::string>> k = {
      {1, {"this is ridiculous !", "i am so angry about this .", "how could you do that ?"}},
      {2, {"that is disgusting .", "yuck , i hate it ."}},
      {3, {"i am afraid of that .", "oh no , i am so worried ."}},
      {4, {"that is wonderful !", "i am so happy !", "great , i love it !", "how nice !"}},
      {5, {"i am so sad to hear that .", "that is too bad .", "i feel terrible ."}},
      {6, {"wow , really ?", "what a surprise !", "i can not believe it !"}},
  };
  return k;
}

template <typename T>
const T& Pick(const std::vector<T>& v, Rng& rng) {
  return v[rng.Index(v.size())];
}

std::string Fill(const std::string& pattern, const std::map<std::string, std::string>& values) {
  std::string out;
  size_t i = 0;
  while (i < pattern.size()) {
    if (pattern[i] == '{') {
      const size_t close = pattern.find('}', i);
      out += values.at(pattern.substr(i + 1, close - i - 1));
      i = close + 1;
    } else {
      out += pattern[i++];
    }
  }
  return out;
}

int PickEmotion(Rng& rng) {
  // Happiness dominates, as in DailyDialog.
  static const std::vector<int> kWeighted = {4, 4, 4, 4, 4, 6, 6, 5, 1, 3, 2};
  return Pick(kWeighted, rng);
}

}  // namespace

std::vector<Dialogue> GenerateDialogues(size_t count, uint64_t seed) {
  std::vector<Dialogue> out;
  out.reserve(count);
  for (size_t d = 0; d < count; ++d) {
    Rng rng(DeriveSeed(seed, d));
    const Topic& topic = Pick(Topics(), rng);
    std::map<std::string, std::string> values;
    for (const auto& [slot, options] : topic.slots) values[slot] = Pick(options, rng);

    std::vector<std::string> turns;
    if (rng.Bernoulli(0.5)) {
      turns.push_back(Pick(Greetings(), rng));
      turns.push_back(Pick(GreetingReplies(), rng));
    }
    std::vector<size_t> order(topic.exchanges.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.Shuffle(std::span<size_t>(order));
    const size_t exchanges = static_cast<size_t>(rng.Range(1, 3));
    for (size_t e = 0; e < std::min(exchanges, order.size()); ++e) {
      const Exchange& ex = topic.exchanges[order[e]];
      // Sometimes the exchange is cut after its first reply.
      const size_t length = rng.Bernoulli(0.3) ? std::min<size_t>(2, ex.size()) : ex.size();
      for (size_t t = 0; t < length; ++t) turns.push_back(Fill(Pick(ex[t], rng), values));
      if (rng.Bernoulli(0.15)) turns.push_back(Pick(GenericReplies(), rng));
    }
    if (rng.Bernoulli(0.5)) {
      turns.push_back(Pick(Closings(), rng));
      turns.push_back(Pick(ClosingReplies(), rng));
    }

    Dialogue dialogue;
    std::vector<int> emotions;
    for (std::string& text : turns) {
      int emotion = kNoEmotion;
      if (rng.Bernoulli(0.18)) {
        emotion = PickEmotion(rng);
        const std::string& phrase = Pick(EmotionPhrases().at(emotion), rng);
        text = rng.Bernoulli(0.5) ? phrase + " " + text : text + " " + phrase;
      }
      dialogue.utterances.push_back(Utterance::FromRaw(text));
      emotions.push_back(emotion);
    }
    dialogue.emotions = std::move(emotions);
    out.push_back(std::move(dialogue));
  }
  return out;
}

EvalSet GenerateEvalSet(const std::vector<Dialogue>& dialogues, size_t contexts,
                        size_t annotators, uint64_t seed) {
  Rng rng(seed);
  EvalSet set;
  std::vector<const Utterance*> pool;
  for (const Dialogue& d : dialogues) {
    for (const Utterance& u : d.utterances) pool.push_back(&u);
  }
  // Per-annotator habits: how much sensibleness and detail move the overall.
  struct Habit {
    double sensible_weight, specific_weight, flip;
  };
  std::vector<Habit> habits;
  for (size_t a = 0; a < annotators; ++a) {
    habits.push_back({1.2 + 0.6 * rng.Uniform(), 0.3 + 0.5 * rng.Uniform(), 0.05 + 0.08 * rng.Uniform()});
  }

  size_t made = 0;
  for (size_t d = 0; d < dialogues.size() && made < contexts; ++d) {
    const auto& turns = dialogues[d].utterances;
    if (turns.size() < 2) continue;
    const size_t t = rng.Index(turns.size() - 1);
    const Utterance& context = turns[t];
    const Utterance& truth = turns[t + 1];
    if (truth.tokens.size() < 2) continue;
    const std::string cid = "c" + std::to_string(made);

    struct Candidate {
      std::string system;
      Tokens tokens;
      int u, s, l;
    };
    std::vector<Candidate> candidates;
    auto detailed = [](const Tokens& tokens) { return tokens.size() >= 6 ? 1 : 0; };
    candidates.push_back({"human", truth.tokens, 1, 1, detailed(truth.tokens)});
    const Utterance* random = pool[rng.Index(pool.size())];
    while (random->tokens == truth.tokens || random->tokens.empty()) random = pool[rng.Index(pool.size())];
    candidates.push_back({"retrieval", random->tokens, 1, 0, detailed(random->tokens)});
    candidates.push_back({"generic", Tokenize(Pick(GenericReplies(), rng)), 1, rng.Bernoulli(0.5) ? 1 : 0, 0});
    Tokens corrupted = rng.Bernoulli(0.5) ? ReorderTokens(truth.tokens, rng) : RepeatSpans(truth.tokens, rng);
    candidates.push_back({"corrupted", corrupted, 0, 0, detailed(truth.tokens)});
    const Utterance* same_dialogue = &turns[rng.Index(turns.size())];
    candidates.push_back({"on_topic", same_dialogue->tokens, 1,
                          same_dialogue == &truth ? 1 : (rng.Bernoulli(0.4) ? 1 : 0),
                          detailed(same_dialogue->tokens)});

    for (size_t k = 0; k < candidates.size(); ++k) {
      const Candidate& c = candidates[k];
      EvalItem item{cid + "_r" + std::to_string(k), context.raw, Join(c.tokens, " "),
                    truth.raw, c.system};
      for (size_t a = 0; a < annotators; ++a) {
        const Habit& h = habits[a];
        auto noisy = [&](int v) { return rng.Bernoulli(h.flip) ? 1 - v : v; };
        AnnotationRecord r;
        r.item_id = item.item_id;
        r.annotator_id = "a" + std::to_string(a + 1);
        r.understandable = noisy(c.u);
        r.sensible = r.understandable == 1 ? noisy(c.s) : noisy(0);
        r.likable = noisy(c.l);
        double overall = 0.0;
        if (r.understandable == 1) {
          overall = 0.4 + h.sensible_weight * r.sensible + h.specific_weight * r.sensible * r.likable;
        }
        overall += (rng.Uniform() - 0.5) * 0.8;
        r.overall = static_cast<int>(std::clamp(std::lround(overall), 0L, 3L));
        set.annotations.push_back(r);
      }
      set.items.push_back(std::move(item));
    }
    ++made;
  }
  return set;
}

std::string GenerateWordVectors(const std::vector<Dialogue>& dialogues, size_t dim, uint64_t seed) {
  std::map<std::string, std::set<size_t>> topics_of;
  for (size_t ti = 0; ti < Topics().size(); ++ti) {
    for (const auto& [slot, options] : Topics()[ti].slots) {
      for (const std::string& o : options) {
        for (const std::string& w : Tokenize(o)) topics_of[w].insert(ti);
      }
    }
  }
  std::set<std::string> vocab;
  for (const Dialogue& d : dialogues) {
    for (const Utterance& u : d.utterances) vocab.insert(u.tokens.begin(), u.tokens.end());
  }
  Rng rng(seed);
  std::string out;
  for (const std::string& w : vocab) {
    std::vector<double> v(dim);
    for (double& x : v) x = rng.Uniform() - 0.5;
    if (const auto it = topics_of.find(w); it != topics_of.end()) {
      for (size_t ti : it->second) v[ti % dim] += 1.5;
    }
    out += w;
    for (double x : v) out += " " + FormatFixed(x, 4);
    out += "\n";
  }
  return out;
}

std::string SerializeEvalPairs(const EvalSet& set) {
  std::string out;
  for (const EvalItem& item : set.items) {
    out += item.item_id + "\t" + item.context + "\t" + item.response + "\t" + item.reference + "\n";
  }
  return out;
}

}  // namespace uslh::synth
