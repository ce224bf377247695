"""Writes the exercise catalog CSV to stdout: python3 data/gen_catalog.py > data/catalog.csv"""
import csv, sys
C = "cardio"
S = "strength"
rows = [
# name, keywords, intensity, description, muscles (category appended)
("Running", "jogging; running; cross country running; 10k training", "moderate (6 miles per hour)",
 "Steady running at roughly a ten-minute mile pace, also called jogging. Works on a treadmill or outdoors, where uneven ground and wind make it a little harder.",
 "Lower extremity muscles including quads, hamstrings, glutes, calves", C),
("Sprint Intervals", "sprints; interval running; track repeats", "vigorous",
 "Short all-out runs of 20 to 30 seconds separated by slow walking until breathing settles.", "Quads, hamstrings, glutes, calves, hip flexors", C),
("Brisk Walking", "power walking; fast walk; walking", "moderate (3.5 miles per hour)",
 "Walking fast enough that talking is possible but singing is not. Needs only comfortable shoes.", "Calves, quads, glutes, hip flexors", C),
("Hiking", "trail walking; hill walking; trekking", "moderate",
 "Walking on hills or trails, often with a light backpack, for an extended outing.", "Quads, glutes, calves, core stabilizers", C),
("Stair Climbing", "stairs; stepmill; stair workout", "vigorous",
 "Walking or stepping briskly up flights of stairs in a building or on a stair machine.", "Glutes, quads, calves, hamstrings", C),
("Cycling", "biking; bicycle riding; road cycling", "moderate (10-12 miles per hour)",
 "Riding a bicycle at a steady, conversational pace on flat roads or paths.", "Quads, hamstrings, calves, glutes", C),
("Indoor Cycling", "spin class; stationary bike; spinning", "vigorous",
 "Pedaling a stationary bike with changing resistance and cadence, usually led by an instructor or video.", "Quads, glutes, hamstrings, calves", C),
("Mountain Biking", "off-road cycling; trail biking", "vigorous",
 "Riding a sturdy bike over dirt trails with climbs, descents and obstacles.", "Quads, glutes, core, forearms", C),
("Swimming Laps", "freestyle swimming; pool laps; front crawl", "moderate",
 "Continuous lap swimming at a relaxed pace using any stroke. Gentle on the joints because the water carries body weight.", "Shoulders, lats, core, legs", C),
("Butterfly Swimming", "butterfly stroke; competitive swimming", "vigorous",
 "Swimming the butterfly stroke, a demanding two-arm stroke with an undulating dolphin kick.", "Shoulders, chest, lats, core, hip flexors", C),
("Water Aerobics", "aqua aerobics; pool exercise class", "moderate",
 "Rhythmic group exercise performed standing in chest-deep water, easy on knees and back.", "Legs, shoulders, core", C),
("Aqua Jogging", "deep water running; pool running", "moderate",
 "Running motions in deep water while wearing a flotation belt, with no impact on the feet.", "Hip flexors, hamstrings, quads, shoulders", C),
("Rowing Machine", "ergometer; indoor rowing; erg", "moderate",
 "Pulling the handle of a rowing machine in a smooth drive and recovery, using the legs first.", "Quads, glutes, back, biceps, core", C),
("Jump Rope", "skipping rope; rope skipping", "vigorous",
 "Skipping over a rope continuously with light bounces on the balls of the feet.", "Calves, shoulders, forearms, quads", C),
("Elliptical Trainer", "cross trainer; elliptical", "moderate",
 "Gliding on an elliptical machine with moving handles, a low-impact alternative to running.", "Quads, glutes, hamstrings, arms", C),
("Dance Fitness", "zumba; aerobic dance; dance workout", "moderate",
 "Following upbeat choreographed dance routines to music in a class or at home.", "Legs, hips, core, arms", C),
("Social Dancing", "ballroom dancing; salsa; swing dancing", "moderate",
 "Partner dancing such as salsa, swing or ballroom at a lively tempo.", "Legs, glutes, core", C),
("Step Aerobics", "step class; bench stepping", "moderate",
 "Stepping on and off a low platform in patterns set to music.", "Quads, glutes, calves", C),
("High-Intensity Interval Training", "hiit; tabata; circuit intervals", "vigorous",
 "Alternating hard bursts of bodyweight moves with short rests for twenty minutes or less.", "Full body, legs, core, shoulders", C),
("Kickboxing", "cardio kickboxing; boxing fitness", "vigorous",
 "Punching and kicking combinations against pads or air at a fast pace.", "Shoulders, core, hips, legs", C),
("Shadow Boxing", "boxing drills; punch combinations", "moderate",
 "Throwing punches and moving the feet without a partner or bag, focusing on form and rhythm.", "Shoulders, arms, core, calves", C),
("Heavy Bag Boxing", "punching bag; bag work", "vigorous",
 "Striking a hanging heavy bag in timed rounds with gloves on.", "Shoulders, chest, core, back", C),
("Tennis Singles", "tennis; racket sport", "vigorous",
 "Playing a full singles tennis match with constant sprinting and direction changes.", "Legs, shoulders, forearms, core", C),
("Tennis Doubles", "doubles tennis", "moderate",
 "Playing tennis with a partner on each side, covering half the court.", "Legs, shoulders, forearms", C),
("Badminton", "shuttlecock; racquet game", "moderate",
 "Hitting a shuttlecock over a net with quick footwork, played recreationally.", "Legs, shoulders, wrists", C),
("Basketball", "hoops; pickup basketball", "vigorous",
 "Playing a full-court game of basketball with running, jumping and shooting.", "Legs, calves, shoulders, core", C),
("Soccer", "football; futsal", "vigorous",
 "Playing an informal or league soccer match with repeated runs and sprints.", "Legs, hips, core", C),
("Volleyball", "beach volleyball; indoor volleyball", "moderate",
 "Recreational volleyball with jumping, passing and short movements.", "Legs, shoulders, core", C),
("Table Tennis", "ping pong", "moderate",
 "Fast rallies on a table with small paddles, requiring quick reactions and short steps.", "Forearms, shoulders, legs", C),
("Golf Walking", "golf; walking the course", "moderate",
 "Playing a round of golf on foot while carrying or pulling the clubs.", "Legs, core, shoulders", C),
("Inline Skating", "rollerblading; roller skating", "moderate",
 "Gliding on inline skates along smooth paths with steady pushes.", "Glutes, quads, hip abductors, core", C),
("Ice Skating", "skating; figure skating practice", "moderate",
 "Skating laps at a rink at an easy, continuous pace.", "Glutes, quads, hip adductors, core", C),
("Cross-Country Skiing", "nordic skiing; ski touring", "vigorous",
 "Gliding on skis across snowy terrain using poles, one of the most demanding endurance activities.", "Legs, glutes, back, arms, core", C),
("Rock Climbing", "bouldering; climbing gym", "vigorous",
 "Climbing indoor or outdoor routes using hands and feet, often in short intense efforts.", "Forearms, back, shoulders, core, legs", S),
("Kayaking", "paddling; canoeing", "moderate",
 "Paddling a kayak on calm water with rhythmic strokes.", "Back, shoulders, arms, core", C),
("Stand-Up Paddleboarding", "sup; paddle board", "moderate",
 "Standing on a large board and paddling, which also challenges balance.", "Core, shoulders, legs", C),
("Trampoline Jumping", "rebounding; mini trampoline", "moderate",
 "Bouncing on a small fitness trampoline with simple jumps and jogs.", "Calves, quads, core", C),
("Burpees", "squat thrusts; burpee intervals", "vigorous",
 "Dropping to a plank, returning to standing and jumping, repeated continuously.", "Full body, chest, legs, core", C),
("Jumping Jacks", "star jumps", "moderate",
 "Jumping while spreading arms and legs and bringing them back together.", "Calves, shoulders, hip abductors", C),
("Mountain Climbers", "running plank; climber drill", "vigorous",
 "Driving the knees toward the chest in turn from a high plank position.", "Core, hip flexors, shoulders", C),
("Shuttle Runs", "agility sprints; cone drills", "vigorous",
 "Sprinting back and forth between two markers and touching the ground at each turn.", "Quads, hamstrings, calves, glutes", C),
("Treadmill Incline Walking", "incline walk; uphill treadmill", "moderate",
 "Walking on a treadmill set to a steep incline at a steady pace.", "Glutes, calves, hamstrings", C),
("Nordic Walking", "pole walking", "moderate",
 "Walking with specially designed poles that bring the arms into each stride.", "Legs, shoulders, triceps, back", C),
("Hula Hooping", "hoop fitness; weighted hoop", "moderate",
 "Keeping a weighted hoop spinning around the waist with hip movements.", "Core, obliques, hips", C),
("Martial Arts Class", "taekwondo; karate; judo", "vigorous",
 "Practicing forms, kicks and sparring drills in a martial arts class.", "Legs, hips, core, shoulders", C),
("Fencing", "sword fencing; epee", "moderate",
 "Bouts of footwork, lunges and blade actions with a partner.", "Quads, glutes, forearms, core", C),
("Ultimate Frisbee", "disc sports; frisbee", "vigorous",
 "A running team game passing a flying disc toward an end zone.", "Legs, calves, shoulders", C),
("Squash", "racquetball", "vigorous",
 "A fast racket game in an enclosed court with constant short sprints.", "Legs, shoulders, forearms, core", C),
("Circuit Training", "station workout; circuit class", "moderate",
 "Rotating through a series of exercise stations with little rest in between.", "Full body", C),
("Stationary Bike Easy Ride", "recumbent bike; easy cycling", "moderate",
 "Pedaling a recumbent or upright stationary bike at a comfortable pace while seated with back support.", "Quads, hamstrings, calves", C),
("Arm Cycling", "upper body ergometer; hand cycling", "moderate",
 "Turning pedals with the hands on an arm ergometer, useful when the legs need a break.", "Shoulders, biceps, triceps, upper back", C),
("Seated Cardio Routine", "chair cardio; seated aerobics", "moderate",
 "Marching, punching and arm sweeps performed while seated in a sturdy chair.", "Arms, shoulders, hip flexors", C),
("Shallow Water Walking", "pool walking; water walking", "moderate",
 "Walking laps in waist-deep water, which adds resistance without impact.", "Legs, hips, core", C),
("Gardening Work", "yard work; digging; raking", "moderate",
 "Digging, raking and carrying soil or leaves in a garden for a sustained period.", "Back, shoulders, legs, forearms", C),
("Active Video Games", "exergaming; fitness games", "moderate",
 "Motion-controlled games that require stepping, dancing or swinging the arms.", "Legs, arms, core", C),
("Hill Repeats", "hill sprints; uphill running", "vigorous",
 "Running hard up a short hill and walking back down, repeated several times.", "Glutes, calves, hamstrings, quads", C),
("Tempo Run", "threshold run; steady hard run", "vigorous",
 "Running at a comfortably hard pace for 20 minutes, just below race effort.", "Quads, hamstrings, calves, glutes", C),
("Skateboarding", "longboarding; cruising", "moderate",
 "Riding and pushing a skateboard along smooth streets or a park.", "Legs, core, ankles", C),
("Rowing on Water", "sculling; crew", "vigorous",
 "Rowing a boat on a lake or river with a sliding seat and oars.", "Back, legs, arms, core", C),
# strength
("Squats", "bodyweight squats; air squats; goblet squat", "moderate",
 "Lowering the hips back and down as if sitting into a chair, then standing up tall.", "Quads, glutes, hamstrings, core; strength", S),
("Lunges", "forward lunges; walking lunges", "moderate",
 "Stepping forward into a split stance and lowering the back knee toward the floor.", "Quads, glutes, hamstrings; strength", S),
("Push-Ups", "press-ups; push up", "moderate",
 "Lowering the chest toward the floor from a plank and pressing back up.", "Chest, triceps, shoulders, core; strength", S),
("Knee Push-Ups", "modified push-ups; kneeling push-ups", "moderate",
 "A push-up performed with the knees on the floor to reduce the load.", "Chest, triceps, shoulders; strength", S),
("Plank", "forearm plank; plank hold", "moderate",
 "Holding a straight body line on the forearms and toes without letting the hips sag.", "Core, abdominals, shoulders; strength", S),
("Side Plank", "lateral plank", "moderate",
 "Balancing on one forearm and the side of one foot, keeping the hips lifted.", "Obliques, core, shoulders; strength", S),
("Deadlift", "barbell deadlift; romanian deadlift", "vigorous",
 "Lifting a loaded barbell from the floor by driving through the legs and hinging at the hips.", "Hamstrings, glutes, lower back, forearms; strength", S),
("Bench Press", "barbell bench; chest press", "vigorous",
 "Pressing a barbell up from the chest while lying on a flat bench.", "Chest, triceps, front shoulders; strength", S),
("Dumbbell Shoulder Press", "overhead press; military press", "moderate",
 "Pressing a pair of dumbbells overhead from shoulder height while seated or standing.", "Shoulders, triceps, upper back; strength", S),
("Lateral Raises", "side raises; dumbbell raises", "moderate",
 "Lifting light dumbbells out to the sides until the arms are level with the shoulders.", "Side deltoids, shoulders; strength", S),
("Bicep Curls", "dumbbell curls; arm curls", "moderate",
 "Curling dumbbells toward the shoulders while keeping the elbows close to the body.", "Biceps, forearms; strength", S),
("Tricep Dips", "bench dips; chair dips", "moderate",
 "Lowering and raising the body with the hands on a bench behind the hips.", "Triceps, shoulders, chest; strength", S),
("Pull-Ups", "chin-ups; bar hangs", "vigorous",
 "Pulling the body up to a bar from a full hang until the chin clears it.", "Lats, biceps, upper back; strength", S),
("Lat Pulldown", "cable pulldown", "moderate",
 "Pulling a wide bar down to the upper chest on a cable machine.", "Lats, biceps, rear shoulders; strength", S),
("Bent-Over Rows", "dumbbell rows; barbell rows", "moderate",
 "Pulling weights toward the waist while hinged forward with a flat back.", "Upper back, lats, biceps; strength", S),
("Resistance Band Rows", "band pulls; elastic band workout", "moderate",
 "Rowing an elastic band anchored at chest height, an equipment-light back exercise for home.", "Upper back, rear shoulders, biceps; strength", S),
("Glute Bridge", "hip bridge; hip thrust", "moderate",
 "Lifting the hips off the floor while lying on the back with knees bent.", "Glutes, hamstrings, lower back; strength", S),
("Wall Sit", "wall squat hold", "moderate",
 "Holding a seated position against a wall with thighs parallel to the floor.", "Quads, glutes; strength", S),
("Calf Raises", "heel raises", "moderate",
 "Rising onto the toes and lowering slowly, on flat ground or a step edge.", "Calves; strength", S),
("Kettlebell Swings", "kettlebell; hip hinge swing", "vigorous",
 "Swinging a kettlebell to chest height by snapping the hips forward.", "Glutes, hamstrings, core, shoulders; strength", S),
("Leg Press", "machine leg press", "moderate",
 "Pushing a weighted platform away with the legs on a leg press machine.", "Quads, glutes, hamstrings; strength", S),
("Step-Ups", "box step-ups; bench step-ups", "moderate",
 "Stepping onto a sturdy box or bench with one leg and driving up to stand.", "Quads, glutes; strength", S),
("Bulgarian Split Squat", "rear foot elevated split squat", "vigorous",
 "A single-leg squat with the back foot resting on a bench behind.", "Quads, glutes, adductors; strength", S),
("Bird Dog", "quadruped reach; opposite arm leg raise", "moderate",
 "Extending the opposite arm and leg from hands and knees while keeping the back still.", "Core, lower back, glutes; strength", S),
("Dead Bug", "supine core drill", "moderate",
 "Lowering opposite arm and leg toward the floor while lying on the back with the lower back pressed down.", "Deep abdominals, core; strength", S),
("Crunches", "sit-ups; ab curls", "moderate",
 "Curling the shoulders off the floor toward the knees while lying on the back.", "Abdominals; strength", S),
("Russian Twists", "seated twists", "moderate",
 "Rotating the torso from side to side while seated with feet lifted.", "Obliques, abdominals; strength", S),
("Superman Hold", "back extensions on floor", "moderate",
 "Lifting the arms, chest and legs off the floor while lying face down.", "Lower back, glutes, upper back; strength", S),
("Pilates Mat", "pilates; core pilates", "moderate",
 "A sequence of controlled mat exercises that emphasizes breathing, core control and alignment.", "Core, abdominals, glutes, back; strength", S),
("Reformer Pilates", "pilates machine; studio pilates", "vigorous",
 "Pilates on a spring-loaded reformer carriage, adding adjustable resistance.", "Core, legs, back, shoulders; strength", S),
("Power Yoga", "vinyasa; flow yoga", "moderate",
 "A flowing yoga practice that links poses with breath and builds heat.", "Core, shoulders, legs; strength", S),
("Hatha Yoga", "yoga; gentle yoga", "moderate",
 "Holding classic yoga postures for several breaths with attention to alignment.", "Core, hips, back, shoulders; strength", S),
("Tai Chi", "taiji; qigong", "moderate",
 "Slow, flowing movements performed in sequence with weight shifts and deep breathing.", "Legs, hips, core; strength", S),
("Barre Workout", "ballet fitness; barre class", "moderate",
 "Small pulsing movements at a ballet barre that target the lower body and posture.", "Glutes, thighs, core; strength", S),
("Medicine Ball Slams", "ball slams", "vigorous",
 "Lifting a heavy ball overhead and throwing it down to the floor with force.", "Core, shoulders, lats; strength", S),
("Farmer's Carry", "loaded carry; suitcase carry", "moderate",
 "Walking while holding heavy weights at the sides with tall posture.", "Forearms, traps, core, legs; strength", S),
("Chest Fly", "dumbbell fly; pec fly", "moderate",
 "Opening the arms wide with dumbbells while lying on a bench, then bringing them together.", "Chest, front shoulders; strength", S),
("Face Pulls", "rope face pull; rear delt pull", "moderate",
 "Pulling a rope attachment toward the face with elbows high to work the upper back.", "Rear shoulders, upper back, rotator cuff; strength", S),
("Wrist Curls", "forearm curls; grip training", "moderate",
 "Curling a light dumbbell with the wrist while the forearm rests on the thigh.", "Forearms, wrist flexors; strength", S),
("Chin Tucks and Wall Angels", "posture drills; wall slides", "moderate",
 "Sliding the arms up a wall while keeping the head and back against it, to train upright posture.", "Upper back, neck, shoulders; strength", S),
("Hip Abduction", "side-lying leg raises; clamshells", "moderate",
 "Lifting the top leg or knee while lying on the side to strengthen the outer hips.", "Glute medius, hip abductors; strength", S),
("Good Mornings", "hip hinge; barbell good morning", "moderate",
 "Hinging forward at the hips with a light bar on the back, then returning upright.", "Hamstrings, lower back, glutes; strength", S),
("Hanging Leg Raises", "knee raises; captain's chair", "vigorous",
 "Raising the legs while hanging from a bar without swinging.", "Abdominals, hip flexors, grip; strength", S),
("Sandbag Training", "sandbag lifts; odd object lifting", "vigorous",
 "Lifting, carrying and shouldering a shifting sandbag.", "Full body, back, legs, core; strength", S),
("Band Pull-Aparts", "resistance band pull apart", "moderate",
 "Stretching a band apart in front of the chest by squeezing the shoulder blades.", "Upper back, rear shoulders; strength", S),
("Golf Rotation Drills", "golf swing training; rotational strength", "moderate",
 "Cable or band rotations that mirror the golf swing to build torso power and backswing range.", "Obliques, core, hips, shoulders; strength", S),
("Suspension Trainer Workout", "trx; strap training", "moderate",
 "Bodyweight rows, presses and lunges using straps anchored overhead.", "Full body, core, back, chest; strength", S),
("Swiss Ball Core Workout", "stability ball; exercise ball", "moderate",
 "Core exercises such as rollouts and pikes performed on an inflatable ball.", "Core, abdominals, lower back; strength", S),
("Chair Squats", "sit to stand; chair stands", "moderate",
 "Standing up from a chair and sitting back down slowly without using the hands.", "Quads, glutes; strength", S),
("Isometric Holds", "static holds; pause training", "moderate",
 "Holding positions such as a half squat or push-up bottom for timed sets.", "Full body, quads, chest, core; strength", S),
("Cable Woodchoppers", "woodchop; cable rotation", "moderate",
 "Pulling a cable diagonally across the body from high to low.", "Obliques, core, shoulders; strength", S),
("Olympic Lifting", "clean and jerk; snatch", "vigorous",
 "Explosive barbell lifts that move the bar from the floor to overhead.", "Legs, back, shoulders, core; strength", S),
("Calisthenics Circuit", "bodyweight training; street workout", "vigorous",
 "Bodyweight strength moves such as dips, pull-ups and pistol squats done back to back.", "Full body, chest, back, legs; strength", S),
]
assert len(rows) == 112, len(rows)
names = [r[0] for r in rows]
assert len(set(names)) == len(names)
w = csv.writer(sys.stdout, lineterminator="\n")
w.writerow(["row_id", "name", "alt_keywords", "intensity", "description", "muscles"])
# Benefit sentence appended to each description so goal wording ("weight loss",
# "muscle", "energy") has something to match.
BENEFITS = {
    (C, "moderate"): "Supports weight loss, heart health, endurance and daily energy.",
    (C, "vigorous"): "Burns many calories for weight loss and builds fitness and stamina quickly.",
    (S, "moderate"): "Builds muscle strength, muscular endurance and stable posture.",
    (S, "vigorous"): "Builds muscle mass and strength with heavy, demanding effort.",
}
for i, (name, kw, inten, desc, muscles, cat) in enumerate(rows, 1):
    desc = desc + " " + BENEFITS[(cat, "vigorous" if inten.startswith("vigorous") else "moderate")]
    if cat == C:
        muscles = muscles + "; cardio"
    elif not muscles.endswith("; strength"):
        muscles = muscles + "; strength"
    w.writerow([i, name, kw, inten, desc, muscles])
