"""
Handing tasks to an assistant thread
====================================

``start()`` launches one assistant thread that busy-waits on the ring.
The calling thread becomes the only one allowed to submit and wait.
"""

import threading
import time

from relic import RuntimeConfig, start

rt = start()
print(rt)

results = []
for i in range(5):
    rt.submit(results.append, i * i)

# wait() returns once every submitted task has finished
rt.wait()
print("results:", results)
print("submitted:", rt.submitted, "completed:", rt.completed)

#%%
# Tasks always run on the assistant, never on the caller.

seen = set()
for _ in range(100):
    rt.submit(lambda _: seen.add(threading.get_ident()))
rt.wait()
print("ran on assistant only:", seen == {rt.assistant_thread_id})

#%%
# The assistant spins while idle. sleep_hint() parks it on an event so the
# logical CPU is released, and the next submit (or wake_up_hint) resumes it.

rt.sleep_hint()
time.sleep(0.01)
print("asleep:", rt.asleep)
rt.submit(results.append, "woken")
rt.wait()
print("last result:", results[-1], "asleep:", rt.asleep)

#%%
# An exception inside a task comes back at the next wait().

rt.submit(lambda _: 1 / 0)
try:
    rt.wait()
except Exception as exc:
    print(type(exc).__name__, "caused by", type(exc.__cause__).__name__)

rt.shutdown()

#%%
# Pinning. With RELIC_NO_PIN unset, assistant_cpu binds the assistant to
# one logical CPU.

with start(RuntimeConfig(assistant_cpu=0)) as pinned:
    print("assistant affinity:", pinned.assistant_affinity)
