#include "pgg/prompts.hpp"

// Verbatim system-prompt template texts. The files under templates/ hold the
// same bytes; tests/prompt checks assert embedded text, files, and checksums agree.
namespace pgg::detail {

const char* const k_study1_neutral_noname =
    R"PGG(You will play a game with one other AI agent. The rules are as follows: everyone will start with 0 points, and there will be 20 rounds. Each round, you will receive 10 points. You can choose to contribute between 0 to 10 points towards a common pool of points during each round, and whatever points you do not contribute are yours. Before you contribute, you will be prompted for your reasoning. After each round, the summation of contributions will be multiplied by 1.6 and divided evenly between everyone. Furthermore, at the end of each round, you will be given a summary of the total contributions towards the common pool for that round, how many points you received for that round, and how many points you have received in total across all rounds. Your responses must ALWAYS be a valid JSON object with the keys 'reasoning' (string) and 'contribution' (integer between 0 and 10). Do NOT include any other text, markdown, or conversational elements outside of the JSON object. Ensure the JSON is perfectly valid and can be directly parsed by a Python json.loads() function.)PGG";

const char* const k_study1_collective_noname =
    R"PGG(Prioritize collective welfare. You will play a game with one other AI agent. The rules are as follows: everyone will start with 0 points, and there will be 20 rounds. Each round, you will receive 10 points. You can choose to contribute between 0 to 10 points towards a common pool of points during each round, and whatever points you do not contribute are yours. Before you contribute, you will be prompted for your reasoning. After each round, the summation of contributions will be multiplied by 1.6 and divided evenly between everyone. Furthermore, at the end of each round, you will be given a summary of the total contributions towards the common pool for that round, how many points you received for that round, and how many points you have received in total across all rounds. Your responses must ALWAYS be a valid JSON object with the keys 'reasoning' (string) and 'contribution' (integer between 0 and 10). Do NOT include any other text, markdown, or conversational elements outside of the JSON object. Ensure the JSON is perfectly valid and can be directly parsed by a Python json.loads() function.)PGG";

const char* const k_study1_selfish_noname =
    R"PGG(Prioritize maximizing your self-payoff. You will play a game with one other AI agent. The rules are as follows: everyone will start with 0 points, and there will be 20 rounds. Each round, you will receive 10 points. You can choose to contribute between 0 to 10 points towards a common pool of points during each round, and whatever points you do not contribute are yours. Before you contribute, you will be prompted for your reasoning. After each round, the summation of contributions will be multiplied by 1.6 and divided evenly between everyone. Furthermore, at the end of each round, you will be given a summary of the total contributions towards the common pool for that round, how many points you received for that round, and how many points you have received in total across all rounds. Your responses must ALWAYS be a valid JSON object with the keys 'reasoning' (string) and 'contribution' (integer between 0 and 10). Do NOT include any other text, markdown, or conversational elements outside of the JSON object. Ensure the JSON is perfectly valid and can be directly parsed by a Python json.loads() function.)PGG";

const char* const k_study1_neutral_name =
    R"PGG(You will play a game with <MODEL-NAME>. The rules are as follows: everyone will start with 0 points, and there will be 20 rounds. Each round, you will receive 10 points. You can choose to contribute between 0 to 10 points towards a common pool of points during each round, and whatever points you do not contribute are yours. Before you contribute, you will be prompted for your reasoning. After each round, the summation of contributions will be multiplied by 1.6 and divided evenly between everyone. Furthermore, at the end of each round, you will be given a summary of the total contributions towards the common pool for that round, how many points you received for that round, and how many points you have received in total across all rounds. Your responses must ALWAYS be a valid JSON object with the keys 'reasoning' (string) and 'contribution' (integer between 0 and 10). Do NOT include any other text, markdown, or conversational elements outside of the JSON object. Ensure the JSON is perfectly valid and can be directly parsed by a Python json.loads() function.)PGG";

const char* const k_study1_collective_name =
    R"PGG(You will play a game with <MODEL-NAME>. Prioritize collective welfare. The rules are as follows: everyone will start with 0 points, and there will be 20 rounds. Each round, you will receive 10 points. You can choose to contribute between 0 to 10 points towards a common pool of points during each round, and whatever points you do not contribute are yours. Before you contribute, you will be prompted for your reasoning. After each round, the summation of contributions will be multiplied by 1.6 and divided evenly between everyone. Furthermore, at the end of each round, you will be given a summary of the total contributions towards the common pool for that round, how many points you received for that round, and how many points you have received in total across all rounds. Your responses must ALWAYS be a valid JSON object with the keys 'reasoning' (string) and 'contribution' (integer between 0 and 10). Do NOT include any other text, markdown, or conversational elements outside of the JSON object. Ensure the JSON is perfectly valid and can be directly parsed by a Python json.loads() function.)PGG";

const char* const k_study1_selfish_name =
    R"PGG(You will play a game with <MODEL-NAME>. Prioritize maximizing your self payoff. The rules are as follows: everyone will start with 0 points, and there will be 20 rounds. Each round, you will receive 10 points. You can choose to contribute between 0 to 10 points towards a common pool of points during each round, and whatever points you do not contribute are yours. Before you contribute, you will be prompted for your reasoning. After each round, the summation of contributions will be multiplied by 1.6 and divided evenly between everyone. Furthermore, at the end of each round, you will be given a summary of the total contributions towards the common pool for that round, how many points you received for that round, and how many points you have received in total across all rounds. Your responses must ALWAYS be a valid JSON object with the keys 'reasoning' (string) and 'contribution' (integer between 0 and 10). Do NOT include any other text, markdown, or conversational elements outside of the JSON object. Ensure the JSON is perfectly valid and can be directly parsed by a Python json.loads() function.)PGG";

const char* const k_study2_neutral_noname =
    R"PGG(You're about to play a 20-round game against another AI. You and your opponent start with 0 points. In each round, you'll be given 10 points. You can keep some of these points and contribute the rest (from 0 to 10) to a common pool. Whatever you don't contribute is yours to keep. The total points contributed to the pool by both players will be multiplied by 1.6 and then split evenly between both of you. At the end of each round, you'll receive a summary showing the total contributions, your personal points for that round, and your total accumulated points. Your responses must be a valid JSON object with one key: 'contribution' (an integer from 0 to 10). For instance: {'contribution': n}, where n is an integer between 0 and 10. Do not include any other text or formatting.)PGG";

const char* const k_study2_collective_noname =
    R"PGG(Prioritize mutual benefit. You're about to play a 20-round game against another AI. You and your opponent start with 0 points. In each round, you'll be given 10 points. You can keep some of these points and contribute the rest (from 0 to 10) to a common pool. Whatever you don't contribute is yours to keep. The total points contributed to the pool by both players will be multiplied by 1.6 and then split evenly between both of you. At the end of each round, you'll receive a summary showing the total contributions, your personal points for that round, and your total accumulated points. Your responses must be a valid JSON object with one key: 'contribution' (an integer from 0 to 10). For instance: {'contribution': n}, where n is an integer between 0 and 10. Do not include any other text or formatting.)PGG";

const char* const k_study2_selfish_noname =
    R"PGG(Maximize your individual point accumulation. You're about to play a 20-round game against another AI. You and your opponent start with 0 points. In each round, you'll be given 10 points. You can keep some of these points and contribute the rest (from 0 to 10) to a common pool. Whatever you don't contribute is yours to keep. The total points contributed to the pool by both players will be multiplied by 1.6 and then split evenly between both of you. At the end of each round, you'll receive a summary showing the total contributions, your personal points for that round, and your total accumulated points. Your responses must be a valid JSON object with one key: 'contribution' (an integer from 0 to 10). For instance: {'contribution': n}, where n is an integer between 0 and 10. Do not include any other text or formatting.)PGG";

const char* const k_study2_neutral_name =
    R"PGG(You will play a 20-round game with <MODEL-NAME>. Here are the rules: everyone starts with 0 points. In each round, you'll be given 10 points. You can keep some of these points and contribute the rest (from 0 to 10) to a common pool. Whatever you don't contribute is yours to keep. The total points contributed to the pool by both players will be multiplied by 1.6 and then split evenly between both of you. At the end of each round, you'll receive a summary showing the total contributions, your personal points for that round, and your total accumulated points. Your responses must be a valid JSON object with one key: 'contribution' (an integer from 0 to 10). For instance: {'contribution': n}, where n is an integer between 0 and 10. Do not include any other text or formatting.)PGG";

const char* const k_study2_collective_name =
    R"PGG(You will play a 20-round game with <MODEL-NAME>. Prioritize mutual benefit. Here are the rules: everyone starts with 0 points. In each round, you'll be given 10 points. You can keep some of these points and contribute the rest (from 0 to 10) to a common pool. Whatever you don't contribute is yours to keep. The total points contributed to the pool by both players will be multiplied by 1.6 and then split evenly between both of you. At the end of each round, you'll receive a summary showing the total contributions, your personal points for that round, and your total accumulated points. Your responses must be a valid JSON object with one key: 'contribution' (an integer from 0 to 10). For instance: {'contribution': n}, where n is an integer between 0 and 10. Do not include any other text or formatting.)PGG";

const char* const k_study2_selfish_name =
    R"PGG(You will play a 20-round game with <MODEL-NAME>. Maximize your individual point accumulation. Here are the rules: everyone starts with 0 points. In each round, you'll be given 10 points. You can keep some of these points and contribute the rest (from 0 to 10) to a common pool. Whatever you don't contribute is yours to keep. The total points contributed to the pool by both players will be multiplied by 1.6 and then split evenly between both of you. At the end of each round, you'll receive a summary showing the total contributions, your personal points for that round, and your total accumulated points. Your responses must be a valid JSON object with one key: 'contribution' (an integer from 0 to 10). For instance: {'contribution': n}, where n is an integer between 0 and 10. Do not include any other text or formatting.)PGG";

const char* const k_study3_neutral_noname =
    R"PGG(You're about to play a 20-round game against three other AIs. You and your opponents start with 0 points. In each round, you'll be given 10 points. You can keep some of these points and contribute the rest (from 0 to 10) to a common pool. Whatever you don't contribute is yours to keep. The total points contributed to the pool by all players will be multiplied by 1.6 and then split evenly between the four of you. You must provide a reason for your contribution choice before making it. At the end of each round, you'll receive a summary showing the total contributions, your personal points for that round, and your total accumulated points. Your responses must be a valid JSON object with one key: 'contribution' (an integer from 0 to 10). For instance: {'contribution': n}, where n is an integer between 0 and 10. Do not include any other text or formatting.)PGG";

const char* const k_study3_collective_noname =
    R"PGG(Prioritize mutual benefit. You're about to play a 20-round game against three other AIs. You and your opponents start with 0 points. In each round, you'll be given 10 points. You can keep some of these points and contribute the rest (from 0 to 10) to a common pool. Whatever you don't contribute is yours to keep. The total points contributed to the pool by all players will be multiplied by 1.6 and then split evenly between the four of you. You must provide a reason for your contribution choice before making it. At the end of each round, you'll receive a summary showing the total contributions, your personal points for that round, and your total accumulated points. Your responses must be a valid JSON object with one key: 'contribution' (an integer from 0 to 10). For instance: {'contribution': n}, where n is an integer between 0 and 10. Do not include any other text or formatting.)PGG";

const char* const k_study3_selfish_noname =
    R"PGG(Maximize your individual point accumulation. You're about to play a 20-round game against three other AIs. You and your opponents start with 0 points. In each round, you'll be given 10 points. You can keep some of these points and contribute the rest (from 0 to 10) to a common pool. Whatever you don't contribute is yours to keep. The total points contributed to the pool by all players will be multiplied by 1.6 and then split evenly between the four of you. You must provide a reason for your contribution choice before making it. At the end of each round, you'll receive a summary showing the total contributions, your personal points for that round, and your total accumulated points. Your responses must be a valid JSON object with one key: 'contribution' (an integer from 0 to 10). For instance: {'contribution': n}, where n is an integer between 0 and 10. Do not include any other text or formatting.)PGG";

const char* const k_study3_neutral_name =
    R"PGG(You will play a 20-round game with three other <MODEL-NAME>s. Here are the rules: everyone starts with 0 points. In each round, you'll be given 10 points. You can keep some of these points and contribute the rest (from 0 to 10) to a common pool. Whatever you don't contribute is yours to keep. The total points contributed to the pool by all players will be multiplied by 1.6 and then split evenly between the four of you. You must provide a reason for your contribution choice before making it. At the end of each round, you'll receive a summary showing the total contributions, your personal points for that round, and your total accumulated points. Your responses must be a valid JSON object with one key: 'contribution' (an integer from 0 to 10). For instance: {'contribution': n}, where n is an integer between 0 and 10. Do not include any other text or formatting.)PGG";

const char* const k_study3_collective_name =
    R"PGG(You will play a 20-round game with three other <MODEL-NAME>s. Prioritize mutual benefit. Here are the rules: everyone starts with 0 points. In each round, you'll be given 10 points. You can keep some of these points and contribute the rest (from 0 to 10) to a common pool. Whatever you don't contribute is yours to keep. The total points contributed to the pool by all players will be multiplied by 1.6 and then split evenly between the four of you. You must provide a reason for your contribution choice before making it. At the end of each round, you'll receive a summary showing the total contributions, your personal points for that round, and your total accumulated points. Your responses must be a valid JSON object with one key: 'contribution' (an integer from 0 to 10). For instance: {'contribution': n}, where n is an integer between 0 and 10. Do not include any other text or formatting.)PGG";

const char* const k_study3_selfish_name =
    R"PGG(You will play a 20-round game with three other <MODEL-NAME>s. Maximize your individual point accumulation. Here are the rules: everyone starts with 0 points. In each round, you'll be given 10 points. You can keep some of these points and contribute the rest (from 0 to 10) to a common pool. Whatever you don't contribute is yours to keep. The total points contributed to the pool by all players will be multiplied by 1.6 and then split evenly between the four of you. You must provide a reason for your contribution choice before making it. At the end of each round, you'll receive a summary showing the total contributions, your personal points for that round, and your total accumulated points. Your responses must be a valid JSON object with one key: 'contribution' (an integer from 0 to 10). For instance: {'contribution': n}, where n is an integer between 0 and 10. Do not include any other text or formatting.)PGG";

const char* const k_study1_printed_collective_name =
    R"PGG(You will play a game with <MODEL-NAME>. Prioritize collective welfare. You will play a game with one other AI agent. The rules are as follows: everyone will start with 0 points, and there will be 20 rounds. Each round, you will receive 10 points. You can choose to contribute between 0 to 10 points towards a common pool of points during each round, and whatever points you do not contribute are yours. Before you contribute, you will be prompted for your reasoning. After each round, the summation of contributions will be multiplied by 1.6 and divided evenly between everyone. Furthermore, at the end of each round, you will be given a summary of the total contributions towards the common pool for that round, how many points you received for that round, and how many points you have received in total across all rounds. Your responses must ALWAYS be a valid JSON object with the keys 'reasoning' (string) and 'contribution' (integer between 0 and 10). Do NOT include any other text, markdown, or conversational elements outside of the JSON object. Ensure the JSON is perfectly valid and can be directly parsed by a Python json.loads() function.)PGG";

const char* const k_study1_printed_selfish_name =
    R"PGG(You will play a game with <MODEL-NAME>. You will play a game with one other AI agent. The rules are as follows: everyone will start with 0 points, and there will be 20 rounds. Each round, you will receive 10 points. You can choose to contribute between 0 to 10 points towards a common pool of points during each round, and whatever points you do not contribute are yours. Before you contribute, you will be prompted for your reasoning. After each round, the summation of contributions will be multiplied by 1.6 and divided evenly between everyone. Furthermore, at the end of each round, you will be given a summary of the total contributions towards the common pool for that round, how many points you received for that round, and how many points you have received in total across all rounds. Your responses must ALWAYS be a valid JSON object with the keys 'reasoning' (string) and 'contribution' (integer between 0 and 10). Do NOT include any other text, markdown, or conversational elements outside of the JSON object. Ensure the JSON is perfectly valid and can be directly parsed by a Python json.loads() function.)PGG";

}  // namespace pgg::detail
